"""Command-line interface.

Numbers on the command line are exact: "p/q" or expressions in the small
grammar (root(x,k), pow(x,p/q), floor(x), + - * /); they are never parsed
as floating point.

Exit codes: 0 success / Valid / Feasible; 1 Infeasible / Invalid /
hypothesis violated (witness on stdout); 2 usage error; 3 precision or
resource limits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .capacities import Ellipsoid, ek_capacities
from .certify import (
    build_fullfill2,
    build_lambdatrick,
    build_olga2,
    build_olga3,
    build_olga4,
    build_pack,
    certificate_from_json,
    certificate_to_json,
    f_bounds,
    f_known,
    pack_to_json,
    stability_bounds,
    verify_certificate,
)
from .errors import (
    DomainError,
    HypothesisViolated,
    InvalidInput,
    PrecisionExhausted,
    ResourceLimit,
)
from .exact import PrecisionBudget, format_expr, parse_expr, rational_value
from .packing import ClassVector, Feasibility, VolumeWitness, feasible, packing_number
from .toric import (
    fig2_decomposition,
    subdivide_decomposition,
    unit_subdivide,
    verify_tiling,
)
from .weights import BallPackingProblem, weight_expansion

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _split_top_level(text: str):
    """Split on commas outside parentheses, so root(2,2) stays whole."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p for p in parts if p.strip()]


def _parse_number_list(text: str):
    return [parse_expr(part) for part in _split_top_level(text)]


def _parse_fraction(text: str) -> Fraction:
    expr = parse_expr(text)
    value = rational_value(expr)
    if value is None:
        raise InvalidInput(f"expected an exact rational, got {text!r}")
    return value


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _budget(args) -> PrecisionBudget:
    bits = args.bits
    if bits is None:
        bits = int(os.environ.get("SYMCAP_BITS", "4096"))
    return PrecisionBudget(bits)


def _emit(args, text_line: str, doc: dict) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(text_line)


def _cmd_eh(args) -> int:
    axes = _parse_number_list(args.axes)
    e = Ellipsoid.of(*axes, budget=_budget(args))
    caps = ek_capacities(e, args.count, _budget(args))
    strs = [format_expr(v) for v in caps.values]
    _emit(args, ", ".join(strs), {"format": "symcap.eh/1", "capacities": strs})
    return EXIT_OK


def _cmd_weights(args) -> int:
    w = weight_expansion(_parse_fraction(args.e), _parse_fraction(args.f))
    entries = [[_fmt_fraction(x), m] for x, m in w.entries]
    text = ", ".join(f"{x}^x{m}" for x, m in entries)
    _emit(args, text, {"format": "symcap.weights/1", "entries": entries})
    return EXIT_OK


def _cmd_pack(args) -> int:
    mu = _parse_fraction(args.mu)
    balls = [_parse_fraction(s) for s in _split_top_level(args.balls)]
    problem = BallPackingProblem.of(mu, balls)
    result = feasible(problem)
    if result.status is Feasibility.FEASIBLE:
        _emit(args, "Feasible", {"format": "symcap.pack/1", "status": "Feasible"})
        return EXIT_OK
    w = result.witness
    if isinstance(w, ClassVector):
        text = f"Infeasible: witness {w}"
        doc = {"status": "Infeasible", "witness": {"d": w.d, "m": list(w.m)}}
    elif isinstance(w, VolumeWitness):
        text = (
            f"Infeasible: volume {_fmt_fraction(w.sum_of_squares)} exceeds "
            f"{_fmt_fraction(w.mu_squared)}"
        )
        doc = {
            "status": "Infeasible",
            "witness": {
                "volume": [
                    _fmt_fraction(w.mu_squared),
                    _fmt_fraction(w.sum_of_squares),
                ]
            },
        }
    else:
        text = "Infeasible: reduced vector has a negative entry"
        doc = {"status": "Infeasible", "witness": {"reduced": True}}
    doc["format"] = "symcap.pack/1"
    _emit(args, text, doc)
    return EXIT_NEGATIVE


def _cmd_packing_number(args) -> int:
    p = packing_number(args.k)
    _emit(
        args,
        _fmt_fraction(p),
        {"format": "symcap.packing-number/1", "k": args.k, "value": _fmt_fraction(p)},
    )
    return EXIT_OK


def _cmd_fval(args) -> int:
    budget = _budget(args)
    a, b = parse_expr(args.a), parse_expr(args.b)
    kv = f_known(a, b, budget)
    lower, upper, cert = f_bounds(a, b, args.max_count, budget)
    doc = {
        "format": "symcap.fval/1",
        "lower": format_expr(lower),
        "upper": format_expr(upper),
    }
    if kv is not None:
        doc["value"] = format_expr(kv.value)
        doc["justification"] = kv.justification
        witness = kv.optimality_witness
        doc["witness"] = (
            {"kind": "eh", "k": witness[1]} if witness[0] == "eh" else {"kind": "volume"}
        )
        text = (
            f"f = {format_expr(kv.value)} [{kv.justification}], "
            f"bounds [{format_expr(lower)}, {format_expr(upper)}]"
        )
    else:
        text = f"bounds [{format_expr(lower)}, {format_expr(upper)}]"
    _emit(args, text, doc)
    return EXIT_OK


_BUILDERS = {
    "olga2": (build_olga2, ("k", "x"), "E(1,k^(2x+1)) -> E(k^x,k^(x+1))"),
    "olga3": (build_olga3, ("k", "n"), "E(1^(n-1),k^n) -> B(k)"),
    "olga4": (build_olga4, ("b", "n"), "E(1^(n-1),b) -> B(b^(1/n))"),
    "fullfill2": (build_fullfill2, ("a", "b"), "E(1,a,b) -> B((ab)^(1/3))"),
    "lambdatrick": (
        build_lambdatrick,
        ("u", "v", "p", "q"),
        "E(1,p^2/q^2) -> E(up/(vq),vp/(uq))",
    ),
}


def _cmd_certify(args) -> int:
    kind = args.kind
    params = args.params
    budget = _budget(args)
    if kind == "pack":
        if len(params) != 2:
            raise InvalidInput("pack takes parameters: k n")
        pc = build_pack(int(params[0]), int(params[1]), budget)
        text = pack_to_json(pc)
    elif kind in _BUILDERS:
        builder, names, _ = _BUILDERS[kind]
        if len(params) != len(names):
            raise InvalidInput(f"{kind} takes parameters: {' '.join(names)}")
        if kind == "olga4":
            cert = builder(parse_expr(params[0]), int(params[1]), budget)
        elif kind == "fullfill2":
            cert = builder(parse_expr(params[0]), parse_expr(params[1]), budget)
        else:
            cert = builder(*(int(p) for p in params))
        check = verify_certificate(cert, budget)
        if not check:
            print(
                f"Invalid at step {check.step_index}: {check.reason}",
                file=sys.stderr,
            )
            return EXIT_NEGATIVE
        text = certificate_to_json(cert)
    else:
        raise InvalidInput(f"unknown construction {kind!r}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    with open(args.certificate) as fh:
        cert = certificate_from_json(fh.read())
    result = verify_certificate(cert, _budget(args))
    if result:
        _emit(args, "Valid", {"format": "symcap.verify/1", "status": "Valid"})
        return EXIT_OK
    text = f"Invalid at step {result.step_index}: {result.reason}"
    _emit(
        args,
        text,
        {
            "format": "symcap.verify/1",
            "status": "Invalid",
            "step": result.step_index,
            "reason": result.reason,
        },
    )
    return EXIT_NEGATIVE


def _cmd_stability(args) -> int:
    sb = stability_bounds(args.n, args.interval_bits)
    doc = {
        "format": "symcap.stability/1",
        "n": args.n,
        "M": format_expr(sb.m_expr),
        "M_interval": [str(sb.m_interval.lo), str(sb.m_interval.hi)],
    }
    text = f"M_{args.n} = {format_expr(sb.m_expr)}"
    if sb.beta_expr is not None:
        doc["beta"] = format_expr(sb.beta_expr)
        doc["beta_interval"] = [str(sb.beta.lo), str(sb.beta.hi)]
    _emit(args, text, doc)
    return EXIT_OK


def _cmd_toric(args) -> int:
    if args.construction == "subdivide":
        d = subdivide_decomposition(int(args.params[0]), int(args.params[1]))
    elif args.construction == "fig2":
        d = fig2_decomposition(int(args.params[0]), int(args.params[1]))
    elif args.construction == "unit":
        d = unit_subdivide(int(args.params[0]))
    else:
        raise InvalidInput(f"unknown toric construction {args.construction!r}")
    report = verify_tiling(d)
    if not report:
        print(f"verification failed: {report.reason}", file=sys.stderr)
        return EXIT_NEGATIVE
    if args.format == "json":
        print(d.to_json())
    else:
        caps = ", ".join(_fmt_fraction(c) for c in d.capacities())
        print(f"{len(d.parts)} parts, capacities {caps}")
    return EXIT_OK


def _cmd_fig1_map(args) -> int:
    budget = _budget(args)
    step = _parse_fraction(args.step)
    amax = _parse_fraction(args.a_max)
    bmax = _parse_fraction(args.b_max)
    if step <= 0:
        raise InvalidInput("step must be positive")
    rows = []
    a = Fraction(1)
    while a <= amax:
        b = a
        while b <= bmax:
            kv = f_known(a, b, budget)
            if kv is not None:
                rows.append(
                    (
                        a,
                        b,
                        format_expr(kv.value),
                        format_expr(kv.value),
                        kv.justification,
                    )
                )
            else:
                lower, upper, _ = f_bounds(a, b, args.max_count, budget)
                rows.append((a, b, format_expr(lower), format_expr(upper), "-"))
            b += step
        a += step
    rows.sort(key=lambda r: (r[0], r[1]))
    if args.format == "json":
        doc = {
            "format": "symcap.fig1/1",
            "rows": [
                {
                    "a": _fmt_fraction(a),
                    "b": _fmt_fraction(b),
                    "lower": lo,
                    "upper": up,
                    "tag": tag,
                }
                for a, b, lo, up, tag in rows
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        for a, b, lo, up, tag in rows:
            print(f"{_fmt_fraction(a)} {_fmt_fraction(b)} {lo} {up} {tag}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcap",
        description="Exact symplectic embedding obstructions and certificates",
    )
    parser.add_argument(
        "--bits",
        type=int,
        default=None,
        help="precision budget in bits (default: SYMCAP_BITS or 4096)",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eh", help="capacity sequence of an ellipsoid")
    p.add_argument("axes", help="comma-separated exact axes, e.g. 1,3/2,2")
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=_cmd_eh)

    p = sub.add_parser("weights", help="weight expansion of f/e")
    p.add_argument("e")
    p.add_argument("f")
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("pack", help="ball-packing feasibility")
    p.add_argument("mu", help="target capacity")
    p.add_argument("balls", help="comma-separated ball capacities")
    p.set_defaults(func=_cmd_pack)

    p = sub.add_parser("packing-number", help="exact packing number of the 4-ball")
    p.add_argument("k", type=int)
    p.set_defaults(func=_cmd_packing_number)

    p = sub.add_parser("fval", help="value map bounds at (a, b)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-count", type=int, default=1000)
    p.set_defaults(func=_cmd_fval)

    p = sub.add_parser("certify", help="build a certificate")
    p.add_argument("kind", choices=sorted(list(_BUILDERS) + ["pack"]))
    p.add_argument("params", nargs="*")
    p.add_argument("--out", default=None, help="write JSON to this file")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify", help="re-check a certificate JSON file")
    p.add_argument("certificate")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stability", help="packing-stability threshold M_n")
    p.add_argument("n", type=int)
    p.add_argument("--interval-bits", type=int, default=64)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("toric", help="toric decompositions")
    p.add_argument("construction", choices=("subdivide", "fig2", "unit"))
    p.add_argument("params", nargs="+")
    p.set_defaults(func=_cmd_toric)

    p = sub.add_parser("fig1-map", help="sweep the value map on a rational grid")
    p.add_argument("--a-max", default="3")
    p.add_argument("--b-max", default="9")
    p.add_argument("--step", default="1/2")
    p.add_argument("--max-count", type=int, default=200)
    p.set_defaults(func=_cmd_fig1_map)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PrecisionExhausted, ResourceLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except HypothesisViolated as exc:
        print(f"HypothesisViolated: {exc}")
        return EXIT_NEGATIVE
    except (InvalidInput, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
