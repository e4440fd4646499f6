"""The ``crn`` command line.

Every subcommand builds a JSON-ready dict; ``--json`` prints it, otherwise
the plain text is rendered from that same dict. Exit status is 0 on
success, 1 for usage or input errors and 2 for analysis errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import _data
from .errors import CRNError, InputError
from .netio import parse_assignment, parse_network, parse_point

GRAMMAR = """\
network file grammar (one declaration per line):
  species: A B C          optional; fixes species order
  A + 2B -> C ; k1        irreversible reaction with rate label k1
  A <-> B ; kf kr         reversible shorthand (forward, then backward)
  0 -> A ; k0             0 is the empty complex
  # comment
assignments: comma-separated label=value, values p/q or decimals
  --rates "k1=1, k2=3/2"   --totals "c1=1, c2=2"   --x0 "1/2, 3/2, 1/4, 1/4"
a bundled network name (mckeithan, extended_mckeithan, g1, g2,
lotka_volterra) may be given instead of a file path."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n\n{GRAMMAR}\n")
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("network", help="network file or bundled network name")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for any random sampling (default 0)")
    common.add_argument("--autolabel", action="store_true", help="name missing rate labels k1, k2, ...")

    parser = _Parser(prog="crn", description="Exact analysis of mass-action reaction networks.",
                     epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("analyze", parents=[common], help="deficiency, linkage classes, conservation laws")

    p = sub.add_parser("siphons", parents=[common], help="minimal siphons")
    p.add_argument("--relevant", action="store_true", help="test each siphon for a covering conservation law")
    p.add_argument("--all", action="store_true", help="also list every siphon (capped)")

    p = sub.add_parser("toric", parents=[common], help="Cayley-matrix complex-balance conditions")
    p.add_argument("--rates", help="rate assignment to test")

    p = sub.add_parser("birch", parents=[common], help="Birch point of a compatibility class")
    p.add_argument("--rates", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--totals", help="conservation totals c1=..., c2=...")
    g.add_argument("--x0", help="a point of the class")

    p = sub.add_parser("injectivity", parents=[common], help="sign pattern of det M(kappa, lambda)")
    p.add_argument("--full", action="store_true", help="list every coefficient")
    p.add_argument("--samples", type=int, default=0, help="also sample the numeric determinant this many times")

    p = sub.add_parser("mixed-volume", parents=[common], help="mixed-volume bound on steady states")
    p.add_argument("--method", choices=("aug", "ssp"), default="aug")
    p.add_argument("--eliminate", help="species to eliminate (ssp), e.g. x3,x4")

    p = sub.add_parser("parametrize", parents=[common], help="linear elimination of species at steady state")
    p.add_argument("--eliminate", required=True)

    p = sub.add_parser("verify-invariant", parents=[common], help="check a polynomial vanishes on a parametrization")
    p.add_argument("polynomial")
    p.add_argument("--eliminate", required=True)

    p = sub.add_parser("simulate", parents=[common], help="RK4 trajectory with conservation monitoring")
    p.add_argument("--rates", required=True)
    p.add_argument("--x0", required=True)
    p.add_argument("--t-end", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--lyapunov", action="store_true", help="monitor the Lyapunov function (complex-balanced rates)")
    p.add_argument("--coords", help="1-based species indices for the trajectory hull, e.g. 1,2")
    p.add_argument("--csv", help="write the trace to this CSV file")
    return parser


# -- helpers ---------------------------------------------------------------

def _load_network(args):
    path = args.network
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    elif path in _data.NAMES:
        text = _data.network_text(path)
    else:
        raise InputError(f"no such network file: {path}")
    return parse_network(text, autolabel=args.autolabel)


def _assignment(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:], encoding="utf-8") as fh:
            return fh.read()
    return value


def _rates(net, text):
    rates = parse_assignment(_assignment(text), net, "rates")
    missing = [lb for lb in net.labels if lb not in rates]
    if missing:
        raise InputError(f"no value for rate(s) {', '.join(missing)}")
    return rates


def _split(text: str) -> list[str]:
    return [t for t in text.replace(",", " ").split() if t]


def _number(q: Fraction):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else str(q)


# -- subcommands ------------------------------------------------------------

def cmd_analyze(net, args) -> dict:
    from .network import structure

    return structure(net).to_json()


def cmd_siphons(net, args) -> dict:
    from .siphons import all_siphons, siphon_report

    out = siphon_report(net, relevant=args.relevant).to_json()
    if args.all:
        out["all_siphons"] = [[i + 1 for i in W] for W in all_siphons(net)]
    return out


def cmd_toric(net, args) -> dict:
    from .toric import cayley_conditions, is_complex_balanced

    out = cayley_conditions(net).to_json()
    if args.rates:
        verdict = is_complex_balanced(net, _rates(net, args.rates))
        out["complex_balanced"] = verdict.status
        out["failing_conditions"] = [str(c) for c in verdict.failing]
    return out


def cmd_birch(net, args) -> dict:
    from .network import class_from_totals, compatibility_class, conservation_basis
    from .toric import birch_point, complex_balanced_point

    rates = _rates(net, args.rates)
    if args.x0:
        cc = compatibility_class(net, parse_point(_assignment(args.x0), net))
    else:
        given = parse_assignment(_assignment(args.totals), net, "totals")
        d = len(conservation_basis(net))
        if sorted(given) != list(range(d)):
            raise InputError(f"totals needed for all {d} conservation laws")
        cc = class_from_totals(net, [given[t] for t in range(d)])
    x_ref = complex_balanced_point(net, rates)
    sol = birch_point(net, rates, cc, x_ref=x_ref)
    return {
        "totals": [str(c) for c in cc.c],
        "birch_point": [float(a) for a in sol.x_star],
        "reference_point": [float(a) for a in x_ref],
        "residual": float(sol.residual),
        "iterations": sol.iterations,
    }


def cmd_injectivity(net, args) -> dict:
    from .inject import injectivity, sign_samples

    v = injectivity(net)
    out = v.to_json(full=args.full)
    if args.samples:
        out["sampled_signs"] = sorted(sign_samples(net, args.samples, seed=args.seed, n_rows=v.n_rows, Z=v.Z))
    return out


def cmd_mixed_volume(net, args) -> dict:
    from .polytope import aug_mv, ssp_mv

    if args.method == "ssp":
        if args.eliminate is None:
            raise InputError("--method ssp needs --eliminate")
        res = ssp_mv(net, _split(args.eliminate))
    else:
        res = aug_mv(net)
    out = res.to_json()
    value = out.pop("value")
    return {"method": out.pop("method"), f"{args.method}MV": _number(Fraction(value)), **out}


def cmd_parametrize(net, args) -> dict:
    from .elimination import eliminate_linear

    par = eliminate_linear(net, _split(args.eliminate))
    return {"free": list(par.free), "expressions": par.to_json()}


def cmd_verify_invariant(net, args) -> dict:
    from .elimination import eliminate_linear, parse_expression, verify_invariant

    par = eliminate_linear(net, _split(args.eliminate))
    p = parse_expression(args.polynomial, net)
    return {"polynomial": str(p), "invariant": verify_invariant(par, p)}


def cmd_simulate(net, args) -> dict:
    from .dynamics import lyapunov_monitor, simulate, trajectory_hull
    from .network import compatibility_class
    from .toric import birch_point

    rates = _rates(net, args.rates)
    x0 = parse_point(_assignment(args.x0), net)
    x_star = None
    if args.lyapunov:
        x_star = birch_point(net, rates, compatibility_class(net, x0)).x_star
    trace = simulate(net, rates, x0, args.t_end, args.dt)
    out = trace.summary()
    if x_star is not None:
        values, monotone = lyapunov_monitor(trace, x_star)
        trace.lyapunov = values
        out["birch_point"] = [float(a) for a in x_star]
        out["lyapunov_initial"] = float(values[0])
        out["lyapunov_final"] = float(values[-1])
        out["lyapunov_monotone"] = monotone
    if args.coords:
        idx = [int(t) - 1 for t in _split(args.coords)]
        if any(not 0 <= i < net.n for i in idx):
            raise InputError("--coords out of range")
        out["hull"] = trajectory_hull(trace, idx).to_json()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(trace.to_csv())
        out["csv"] = args.csv
    return out


COMMANDS = {
    "analyze": cmd_analyze,
    "siphons": cmd_siphons,
    "toric": cmd_toric,
    "birch": cmd_birch,
    "injectivity": cmd_injectivity,
    "mixed-volume": cmd_mixed_volume,
    "parametrize": cmd_parametrize,
    "verify-invariant": cmd_verify_invariant,
    "simulate": cmd_simulate,
}


# -- text rendering ---------------------------------------------------------

def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, list):
        return "(" + ", ".join(_scalar(x) for x in v) + ")"
    return str(v)


def render(data: dict, indent: str = "") -> str:
    """Plain-text form of a report; a function of the JSON dict alone."""
    lines = []
    for key, value in data.items():
        label = indent + key.replace("_", " ")
        if isinstance(value, dict):
            lines.append(f"{label}:")
            lines.append(render(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{label}:")
            for item in value:
                lines.append(indent + "  - " + "; ".join(f"{k.replace('_', ' ')}: {_scalar(v)}" for k, v in item.items()))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{label}:")
            for item in value:
                lines.append(indent + "  " + _scalar(item))
        else:
            lines.append(f"{label}: {_scalar(value)}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        net = _load_network(args)
        data = COMMANDS[args.command](net, args)
    except InputError as exc:
        sys.stderr.write(f"crn: error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"crn: error: {exc}\n")
        return 1
    except CRNError as exc:
        sys.stderr.write(f"crn: {type(exc).__name__}: {exc}\n")
        return 2
    if args.json:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        sys.stdout.write(render(data) + "\n")
    return 0
