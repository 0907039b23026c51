"""Command-line front end: ``gcv <subcommand> ...`` emitting one JSON document.

Output is deterministic for a fixed argv: keys are sorted, numbers that are
not machine-sized are decimal strings and wall-clock time is only reported
with ``--timing``.  Exit codes: 0 success, 2 input error, 3 Monte Carlo
failure (degeneracy retries exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .acv import DEFAULT_CONFIDENCE, MonteCarloFailure, asymptotic_critical_values
from .bounds import attained_bounds, constrained_bounds, newton_bounds, unconstrained_bounds
from .constrained import ConstrainedError, build_system_J, constrained_infimum_toy
from .elimination import DegenerateSystemError
from .newton import DISCLAIMER, bifurcation_superset_newton, make_poly_tuple
from .optimize import Budget, infimum
from .polyring import MPoly, PolyError, bitsize, parse_poly
from .polytope import PolytopeError, tuple_facings

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_INPUT, EXIT_MONTE_CARLO = 0, 2, 3
SEED_LIMIT = 1 << 64

_RATIONAL = {"type": "string", "pattern": r"^-?\d+/\d+$"}
_ALGEBRAIC = {
    "type": "object",
    "required": ["defining", "lo", "hi"],
    "properties": {"defining": {"type": "array", "items": {"type": "string"}}, "lo": _RATIONAL, "hi": _RATIONAL},
}

OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "gcv output",
    "type": "object",
    "required": ["schema_version", "command", "config", "result", "timing"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": ["acv", "infimum", "newton", "constrained", "bounds", "facings"]},
        "config": {
            "type": "object",
            "required": ["polynomials", "vars", "seed"],
            "properties": {
                "polynomials": {"type": "object", "additionalProperties": {}},
                "vars": {"type": "array", "items": {"type": "string"}},
                "seed": {"type": "string", "pattern": r"^\d+$"},
                "confidence": {"type": "integer"},
                "budget": {"type": "object"},
                "precision": {"type": "integer"},
                "output": {"type": ["string", "null"]},
            },
        },
        "result": {"type": "object"},
        "timing": {
            "type": "object",
            "required": ["recorded"],
            "properties": {"recorded": {"type": "boolean"}, "seconds": {"type": "number"}},
        },
    },
    "$defs": {"rational": _RATIONAL, "algebraic_number": _ALGEBRAIC},
}


class InputError(Exception):
    pass


def _read_text(value: str) -> str:
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            return path.read_text().strip()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return value


def _vars(text: str) -> list[str]:
    names = [v.strip() for v in _read_text(text).split(",") if v.strip()]
    if not names:
        raise InputError("--vars needs at least one name")
    return names


def _poly(text: str, names: Sequence[str], label: str) -> MPoly:
    try:
        return parse_poly(_read_text(text), names)
    except PolyError as exc:
        raise InputError(f"{label}: {exc}") from None


def _seed(text: str) -> int:
    try:
        s = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= s < SEED_LIMIT:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return s


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _budget(starts: int) -> Budget:
    return Budget(starts=starts)


# ---------------------------------------------------------------------------
# subcommands; each returns (config polynomials, result payload)


def _cmd_acv(args, names):
    f = _poly(args.poly, names, "--poly")
    report = asymptotic_critical_values(f, args.confidence, args.seed, with_k0=not args.no_k0)
    result = report.to_json(names)
    result["candidates"] = [a.to_json() for a in report.candidates()]
    return {"poly": f.to_str(names)}, result


def _cmd_infimum(args, names):
    f = _poly(args.poly, names, "--poly")
    res = infimum(f, args.confidence, args.seed, _budget(args.budget), args.precision)
    return {"poly": f.to_str(names)}, res.to_json(names)


def _objective_and_constraints(args, names):
    F = _poly(args.objective, names, "--objective")
    gs = [_poly(t, names, "--constraints") for t in args.constraints]
    return F, gs


def _cmd_newton(args, names):
    F, gs = _objective_and_constraints(args, names)
    T = make_poly_tuple(F, gs)
    report = bifurcation_superset_newton(T, args.seed)
    return ({"objective": F.to_str(names), "constraints": [g.to_str(names) for g in gs]},
            report.to_json())


def _cmd_constrained(args, names):
    F, gs = _objective_and_constraints(args, names)
    qs = [_poly(t, names, "--inequalities") for t in args.inequalities]
    polys = {"objective": F.to_str(names), "constraints": [g.to_str(names) for g in gs],
             "inequalities": [q.to_str(names) for q in qs]}
    if args.toy:
        rep = constrained_infimum_toy(F, gs, args.seed, qs, _budget(args.budget), args.precision)
        return polys, rep.to_json()
    if qs:
        raise InputError("--inequalities requires --toy")
    tau = max([bitsize(F)] + [bitsize(g) for g in gs])
    d1 = max((g.degree() for g in gs), default=1)
    bounds = constrained_bounds(F.nvars, max(F.degree(), 1), max(d1, 1), tau, len(gs))
    try:
        J = build_system_J(F, gs, args.seed, names=names)
    except ConstrainedError as exc:
        raise InputError(str(exc)) from None
    return polys, {"status": "bounds-only", "system_J": J.to_json(), "bounds": bounds.to_json()}


def _cmd_bounds(args, names):
    need = {"attained": ("H",), "unconstrained": ("tau",), "newton": ("tau",),
            "constrained": ("tau", "d1", "r")}[args.scenario]
    missing = [k for k in need if getattr(args, k) is None]
    if missing:
        raise InputError(f"scenario {args.scenario} needs --{', --'.join(missing)}")
    try:
        if args.scenario == "attained":
            rep = attained_bounds(args.n, args.d, args.H, args.r or 0, args.s or 0)
        elif args.scenario == "unconstrained":
            rep = unconstrained_bounds(args.n, args.d, args.tau)
        elif args.scenario == "newton":
            rep = newton_bounds(args.n, args.d, args.tau)
        else:
            rep = constrained_bounds(args.n, args.d, args.d1, args.tau, args.r)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {}, rep.to_json()


def _cmd_facings(args, names):
    F, gs = _objective_and_constraints(args, names)
    facings = tuple_facings(make_poly_tuple(F, gs).tuple)
    return ({"objective": F.to_str(names), "constraints": [g.to_str(names) for g in gs]},
            {"facings": [f.to_json() for f in facings],
             "important_origin": sum(1 for f in facings if f.important and f.origin),
             "disclaimer": DISCLAIMER})


COMMANDS = {
    "acv": _cmd_acv, "infimum": _cmd_infimum, "newton": _cmd_newton,
    "constrained": _cmd_constrained, "bounds": _cmd_bounds, "facings": _cmd_facings,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcv", description="Critical values and infima of real polynomials.",
                                fromfile_prefix_chars=None)
    p.add_argument("--version", action="version", version=f"gcv {__version__}")
    p.add_argument("--json-schema", action="store_true", help="print the output JSON schema and exit")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def common(sp, seed=True):
        sp.add_argument("--vars", help="comma separated variable names (or @file)")
        if seed:
            sp.add_argument("--seed", type=_seed, default=0, help="unsigned 64-bit seed (default 0)")
        sp.add_argument("--output", help="also write the JSON document to this path")
        sp.add_argument("--timing", action="store_true", help="record wall-clock seconds (not reproducible)")

    sp = sub.add_parser("acv", help="asymptotic critical values and K0 candidates")
    sp.add_argument("--poly", required=True, help="polynomial text or @file")
    common(sp)
    sp.add_argument("--confidence", type=_positive, default=DEFAULT_CONFIDENCE)
    sp.add_argument("--no-k0", action="store_true", help="skip the classical critical values")

    sp = sub.add_parser("infimum", help="global infimum over R^n")
    sp.add_argument("--poly", required=True)
    common(sp)
    sp.add_argument("--confidence", type=_positive, default=DEFAULT_CONFIDENCE)
    sp.add_argument("--budget", type=_positive, default=Budget().starts, help="random starts per level")
    sp.add_argument("--precision", type=_positive, default=24, help="attainment precision in bits")

    for name, helptext in (("newton", "bifurcation superset from face-discriminants"),
                           ("facings", "facings of the Newton polytope tuple")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--objective", required=True)
        sp.add_argument("--constraints", nargs="*", default=[])
        common(sp, seed=(name == "newton"))

    sp = sub.add_parser("constrained", help="constrained machinery; full pipeline with --toy")
    sp.add_argument("--objective", required=True)
    sp.add_argument("--constraints", nargs="*", default=[])
    sp.add_argument("--inequalities", nargs="*", default=[], help="q >= 0 side conditions (toy only)")
    sp.add_argument("--toy", action="store_true")
    common(sp)
    sp.add_argument("--budget", type=_positive, default=Budget().starts)
    sp.add_argument("--precision", type=_positive, default=24)

    sp = sub.add_parser("bounds", help="closed-form degree and magnitude bounds")
    sp.add_argument("--scenario", required=True, choices=["attained", "unconstrained", "newton", "constrained"])
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--d", type=_positive, required=True)
    sp.add_argument("--d1", type=_positive)
    sp.add_argument("--tau", type=_positive)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--H", type=_positive)
    sp.add_argument("--output")
    sp.add_argument("--timing", action="store_true")
    return p


def _config(args, names, polys) -> dict:
    cfg = {"polynomials": polys, "vars": names, "seed": str(getattr(args, "seed", 0)),
           "output": getattr(args, "output", None)}
    for key in ("confidence", "precision"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    if hasattr(args, "budget"):
        cfg["budget"] = _budget(args.budget).to_json()
    for key in ("toy", "no_k0", "scenario", "n", "d", "d1", "tau", "r", "s", "H"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    return cfg


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.json_schema:
        out.write(dumps(OUTPUT_SCHEMA))
        return EXIT_OK
    if args.command is None:
        parser.print_usage(err)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        names = [] if args.command == "bounds" else _vars(args.vars or "")
        polys, result = COMMANDS[args.command](args, names)
    except (InputError, PolyError, PolytopeError, ConstrainedError) as exc:
        err.write(f"gcv {args.command}: input error: {exc}\n")
        return EXIT_INPUT
    except (MonteCarloFailure, DegenerateSystemError) as exc:
        err.write(f"gcv {args.command}: Monte Carlo failure: {exc}\n")
        return EXIT_MONTE_CARLO
    timing = {"recorded": bool(args.timing)}
    if args.timing:
        timing["seconds"] = round(time.perf_counter() - start, 3)
    doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "config": _config(args, names, polys),
           "result": result, "timing": timing}
    text = dumps(doc)
    out.write(text)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            err.write(f"gcv: cannot write {args.output}: {exc.strerror}\n")
            return EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
