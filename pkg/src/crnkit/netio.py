"""Text and JSON formats for networks and numeric assignments.

Network files hold one declaration per line::

    # McKeithan's kinetic proofreading model
    species: X1 X2 X3 X4
    X1 + X2 -> X3 ; k1
    X3 -> X1 + X2 ; k2
    A <-> 2B ; kf kr
    0 -> P ; k0

The empty complex is written ``0``. Coefficients are non-negative integers
up to 10**6, written before the species name (``2B`` or ``2 B``).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Mapping

from .errors import (
    DuplicateRateLabel,
    InputError,
    InvalidNetwork,
    NegativeStoichiometry,
    NetworkSyntaxError,
    NonpositiveRate,
    UnknownLabel,
)
from .network import Network, Reaction, conservation_basis

MAX_COEFFICIENT = 10**6

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TERM = re.compile(r"\s*(?:(-?\d+)\s*\*?\s*)?([A-Za-z][A-Za-z0-9_]*)\s*$")
_ARROW = re.compile(r"<->|->")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _parse_complex(text: str, lineno: int, col0: int, species_seen: list[str], declared):
    body = text.strip()
    if not body:
        raise NetworkSyntaxError("empty complex (write 0 for the empty complex)", lineno, col0 + 1)
    if body == "0":
        return {}
    out: dict[str, int] = {}
    col = col0
    for piece in text.split("+"):
        m = _TERM.match(piece)
        where = col + len(piece) - len(piece.lstrip()) + 1
        if not m:
            raise NetworkSyntaxError(f"bad term {piece.strip()!r}", lineno, where)
        coef = int(m.group(1)) if m.group(1) is not None else 1
        name = m.group(2)
        if coef < 0:
            raise NegativeStoichiometry(f"negative coefficient {coef} for {name}", lineno, where)
        if coef > MAX_COEFFICIENT:
            raise NetworkSyntaxError(f"coefficient {coef} exceeds {MAX_COEFFICIENT}", lineno, where)
        if declared is not None and name not in declared:
            raise NetworkSyntaxError(f"species {name!r} is not declared", lineno, where)
        if name not in species_seen:
            species_seen.append(name)
        out[name] = out.get(name, 0) + coef
        col += len(piece) + 1
    return {k: v for k, v in out.items() if v}


def parse_network(text: str, autolabel: bool = False, allow_parallel: bool = False) -> Network:
    """Parse the line-oriented network format.

    Species order is the ``species:`` declaration if present, else order of
    first appearance. ``<->`` expands to the forward reaction then the
    backward one. With ``autolabel`` missing labels become ``k1, k2, ...``
    (skipping labels already in use).
    """
    lines = text.splitlines()
    declared: list[str] | None = None
    for lineno, raw in enumerate(lines, 1):
        line = _strip_comment(raw)
        if line.strip().startswith("species:"):
            names = line.split(":", 1)[1].split()
            for name in names:
                if not _IDENT.fullmatch(name):
                    raise NetworkSyntaxError(f"bad species name {name!r}", lineno, raw.find(name) + 1)
            if declared is None:
                declared = []
            for name in names:
                if name in declared:
                    raise NetworkSyntaxError(f"species {name!r} declared twice", lineno, raw.find(name) + 1)
                declared.append(name)

    seen: list[str] = []
    pending = []  # (source dict, target dict, label or None, lineno)
    for lineno, raw in enumerate(lines, 1):
        line = _strip_comment(raw)
        if not line.strip() or line.strip().startswith("species:"):
            continue
        if ";" in line:
            lhs, labels_text = line.split(";", 1)
        else:
            lhs, labels_text = line, ""
        arrows = list(_ARROW.finditer(lhs))
        if len(arrows) != 1:
            raise NetworkSyntaxError("expected exactly one '->' or '<->'", lineno, 1)
        arrow = arrows[0]
        src = _parse_complex(lhs[: arrow.start()], lineno, 0, seen, declared)
        tgt = _parse_complex(lhs[arrow.end():], lineno, arrow.end(), seen, declared)
        labels = labels_text.replace(",", " ").split()
        label_col = len(lhs) + 2
        for lb in labels:
            if not _IDENT.fullmatch(lb):
                raise NetworkSyntaxError(f"bad rate label {lb!r}", lineno, raw.find(lb, len(lhs)) + 1)
        want = 2 if arrow.group() == "<->" else 1
        if len(labels) not in (want, 0) or (not labels and not autolabel):
            raise NetworkSyntaxError(
                f"expected {want} rate label(s) after ';', found {len(labels)}", lineno, label_col
            )
        labels = labels or [None] * want
        pending.append((src, tgt, labels[0], lineno))
        if want == 2:
            pending.append((tgt, src, labels[1], lineno))

    species = declared if declared is not None else seen
    used: dict[str, int] = {}
    for _, _, lb, lineno in pending:
        if lb is None:
            continue
        if lb in used:
            raise DuplicateRateLabel(f"rate label {lb!r} already used on line {used[lb]}", lineno)
        if lb in species:
            raise NetworkSyntaxError(f"rate label {lb!r} clashes with a species name", lineno)
        used[lb] = lineno
    counter = 0
    reactions = []
    for src, tgt, lb, lineno in pending:
        if lb is None:
            counter += 1
            while f"k{counter}" in used or f"k{counter}" in species:
                counter += 1
            lb = f"k{counter}"
        reactions.append((src, tgt, lb, lineno))

    try:
        return Network.build(species, [(s, t, lb) for s, t, lb, _ in reactions], allow_parallel=allow_parallel)
    except InvalidNetwork as exc:
        # locate the offending line for self-loops and parallel edges
        for s, t, lb, lineno in reactions:
            if lb in str(exc):
                raise NetworkSyntaxError(str(exc), lineno) from None
        raise NetworkSyntaxError(str(exc)) from None


def format_complex(net: Network, y) -> str:
    parts = []
    for name, a in zip(net.species, y):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{a}{name}")
    return " + ".join(parts) if parts else "0"


def serialize_network(net: Network) -> str:
    """Canonical text form; parsing it gives back an equal network."""
    lines = ["species: " + " ".join(net.species)]
    for rx in net.reactions:
        lines.append(
            f"{format_complex(net, net.complexes[rx.source])} -> "
            f"{format_complex(net, net.complexes[rx.target])} ; {rx.label}"
        )
    return "\n".join(lines) + "\n"


def network_to_json(net: Network) -> dict:
    return {
        "species": list(net.species),
        "complexes": [list(y) for y in net.complexes],
        "reactions": [{"source": rx.source, "target": rx.target, "label": rx.label} for rx in net.reactions],
    }


def network_from_json(data: Mapping) -> Network:
    try:
        return Network(
            tuple(data["species"]),
            tuple(tuple(y) for y in data["complexes"]),
            tuple(Reaction(int(r["source"]), int(r["target"]), str(r["label"])) for r in data["reactions"]),
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed network JSON: {exc}") from None


def dumps_network(net: Network) -> str:
    return json.dumps(network_to_json(net), sort_keys=True)


def parse_rational(token: str) -> Fraction:
    """Exact rational from ``p/q``, an integer or a decimal literal."""
    token = token.strip()
    if not re.fullmatch(r"[+-]?(\d+(/\d+)?|\d*\.\d+([eE][+-]?\d+)?|\d+\.?\d*[eE][+-]?\d+|\d+\.)", token):
        raise InputError(f"not a rational number: {token!r}")
    return Fraction(token)


def _pairs(text: str):
    for chunk in re.split(r"[,\n]", text):
        chunk = _strip_comment(chunk).strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise InputError(f"expected label=value, got {chunk!r}")
        key, value = chunk.split("=", 1)
        yield key.strip(), parse_rational(value)


def parse_assignment(text: str, network: Network, kind: str = "rates") -> dict:
    """Parse ``label=value`` pairs.

    ``kind="rates"`` returns ``{label: Fraction}`` with every value > 0.
    ``kind="totals"`` returns ``{index: Fraction}`` keyed by 0-based row of
    the conservation basis; keys are written ``c1, c2, ...`` or ``1, 2, ...``.
    """
    if kind == "rates":
        out = {}
        for key, value in _pairs(text):
            if key not in network.labels:
                raise UnknownLabel(f"{key!r} is not a rate label of the network")
            if value <= 0:
                raise NonpositiveRate(f"rate {key} must be positive, got {value}")
            out[key] = value
        return out
    if kind == "totals":
        d = len(conservation_basis(network))
        out = {}
        for key, value in _pairs(text):
            digits = key[1:] if key[:1] in ("c", "C") else key
            if not digits.isdigit() or not 1 <= int(digits) <= d:
                raise UnknownLabel(f"{key!r} does not name one of the {d} conservation laws")
            out[int(digits) - 1] = value
        return out
    raise ValueError(f"unknown assignment kind {kind!r}")


def parse_point(text: str, network: Network) -> list[Fraction]:
    """A state vector, either positional ``1/2, 3/2, ...`` or ``name=value`` pairs."""
    if "=" in text:
        x = [Fraction(0)] * network.n
        for key, value in _pairs(text):
            try:
                x[network.species_index(key)] = value
            except KeyError as exc:
                raise UnknownLabel(str(exc)) from None
        return x
    values = [parse_rational(t) for t in re.split(r"[,\s]+", text.strip()) if t]
    if len(values) != network.n:
        raise InputError(f"expected {network.n} values, got {len(values)}")
    return values
