"""JSON Schemas for the ``--json`` output of each ``crn`` subcommand."""

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
INDEX_SET = {"type": "array", "items": {"type": "integer", "minimum": 1}}
MV_VALUE = {"oneOf": [{"type": "integer", "minimum": 0}, RATIONAL]}

POLYTOPE = {
    "type": "object",
    "required": ["dim", "vertices"],
    "properties": {
        "dim": {"type": "integer", "minimum": 0},
        "vertices": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
    },
}

ANALYZE = {
    "type": "object",
    "required": ["n", "m", "r", "linkage_classes", "rank", "deficiency", "weakly_reversible", "conservation_basis"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "r": {"type": "integer", "minimum": 0},
        "linkage_classes": {"type": "integer", "minimum": 0},
        "rank": {"type": "integer", "minimum": 0},
        "deficiency": {"type": "integer", "minimum": 0},
        "weakly_reversible": {"type": "boolean"},
        "conservation_basis": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
    },
}

SIPHONS = {
    "type": "object",
    "required": ["minimal_siphons"],
    "properties": {
        "minimal_siphons": {"type": "array", "items": INDEX_SET},
        "all_siphons": {"type": "array", "items": INDEX_SET},
        "relevance": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["siphon", "status", "witness"],
                "properties": {
                    "siphon": INDEX_SET,
                    "status": {"enum": ["covered-by-conservation-law", "relevant"]},
                    "witness": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer", "minimum": 0}}]},
                },
            },
        },
        "no_boundary_steady_states": {"type": "boolean"},
    },
}

TORIC = {
    "type": "object",
    "required": ["permutation", "cayley", "kernel", "conditions", "deficiency", "weakly_reversible", "labels"],
    "properties": {
        "permutation": INDEX_SET,
        "cayley": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "kernel": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "conditions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["lhs", "rhs", "lhs_kappa", "rhs_kappa"],
                "properties": {k: {"type": "string"} for k in ("lhs", "rhs", "lhs_kappa", "rhs_kappa")},
            },
        },
        "deficiency": {"type": "integer", "minimum": 0},
        "weakly_reversible": {"type": "boolean"},
        "labels": {"type": "array", "items": {"type": "string"}},
        "complex_balanced": {"enum": ["always-by-deficiency-zero", "yes", "no"]},
        "failing_conditions": {"type": "array", "items": {"type": "string"}},
    },
}

BIRCH = {
    "type": "object",
    "required": ["totals", "birch_point", "residual", "iterations", "reference_point"],
    "properties": {
        "totals": {"type": "array", "items": RATIONAL},
        "birch_point": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
        "reference_point": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
        "residual": {"type": "number", "minimum": 0},
        "iterations": {"type": "integer", "minimum": 0},
    },
}

INJECTIVITY = {
    "type": "object",
    "required": ["status", "s", "terms", "positive_count", "negative_count", "coefficients"],
    "properties": {
        "status": {"enum": ["injective", "not-injective", "degenerate-zero-determinant"]},
        "s": {"type": "integer", "minimum": 0},
        "terms": {"type": "integer", "minimum": 0},
        "positive_count": {"type": "integer", "minimum": 0},
        "negative_count": {"type": "integer", "minimum": 0},
        "note": {"type": "string"},
        "coefficients": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["reactions", "species", "coefficient"],
                "properties": {
                    "reactions": INDEX_SET,
                    "species": INDEX_SET,
                    "coefficient": {"type": "integer"},
                },
            },
        },
        "sampled_signs": {"type": "array", "items": {"enum": [-1, 0, 1]}},
    },
}

MIXED_VOLUME = {
    "type": "object",
    "required": ["method", "variables", "polytopes"],
    "properties": {
        "method": {"enum": ["aug", "ssp"]},
        "augMV": MV_VALUE,
        "sspMV": MV_VALUE,
        "variables": {"type": "array", "items": {"type": "string"}},
        "polytopes": {"type": "array", "items": POLYTOPE},
        "ode_rows": INDEX_SET,
    },
    "oneOf": [{"required": ["augMV"]}, {"required": ["sspMV"]}],
}

EXPRESSION = {
    "type": "object",
    "required": ["var", "num", "den"],
    "properties": {k: {"type": "string"} for k in ("var", "num", "den")},
}

PARAMETRIZE = {
    "type": "object",
    "required": ["free", "expressions"],
    "properties": {
        "free": {"type": "array", "items": {"type": "string"}},
        "expressions": {"type": "array", "items": EXPRESSION},
    },
}

VERIFY_INVARIANT = {
    "type": "object",
    "required": ["polynomial", "invariant"],
    "properties": {"polynomial": {"type": "string"}, "invariant": {"type": "boolean"}},
}

SIMULATE = {
    "type": "object",
    "required": ["steps", "t_final", "terminal_state", "max_conservation_drift", "clipped_steps", "converged_early"],
    "properties": {
        "steps": {"type": "integer", "minimum": 0},
        "t_final": {"type": "number", "minimum": 0},
        "terminal_state": {"type": "array", "items": {"type": "number", "minimum": 0}},
        "max_conservation_drift": {"type": "number", "minimum": 0},
        "clipped_steps": {"type": "integer", "minimum": 0},
        "converged_early": {"type": "boolean"},
        "lyapunov_initial": {"type": "number"},
        "lyapunov_final": {"type": "number"},
        "lyapunov_monotone": {"type": "boolean"},
        "birch_point": {"type": "array", "items": {"type": "number"}},
        "hull": POLYTOPE,
        "csv": {"type": "string"},
    },
}

SCHEMAS = {
    "analyze": ANALYZE,
    "siphons": SIPHONS,
    "toric": TORIC,
    "birch": BIRCH,
    "injectivity": INJECTIVITY,
    "mixed-volume": MIXED_VOLUME,
    "parametrize": PARAMETRIZE,
    "verify-invariant": VERIFY_INVARIANT,
    "simulate": SIMULATE,
}
