"""Command-line interface: validate, solve, metric, paths, verify, generate, svg.

All commands are file-in/JSON-out and deterministic for identical inputs.
Exit codes: 0 success, 1 validation or verdict failure, 2 usage error,
3 requested thick path does not exist.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from .bvp import solve
from .io import QuadnetParseError, parse_quadnet, serialize_quadnet
from .mesh import derive_network, generate_grid, validate
from .paths import (
    EnumerationGuardError,
    NoThickPathError,
    enumerate_thick_paths,
    shortest_thick_path,
)
from .potential import dirichlet_energy, gradient_metric, network_constants
from .svg import SvgError, render_svg

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_PATH = 3


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _num(x) -> str | float:
    if isinstance(x, Fraction):
        return str(x)
    return float(x)


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_quadnet(text)


def cmd_validate(args) -> int:
    t = _load(args.file)
    report = validate(t)
    _emit(
        {
            "ok": report.ok,
            "violations": [
                {"invariant": name, "offenders": list(off), "message": msg}
                for name, off, msg in report.violations
            ],
        }
    )
    return EXIT_OK if report.ok else EXIT_FAIL


def _solved(args):
    t = _load(args.file)
    if getattr(args, "g", None) is not None:
        t = t.with_g(Fraction(args.g))
    report = validate(t)
    if not report.ok:
        raise QuadnetParseError("instance fails validation: " + report.violations[0][2])
    net = derive_network(t)
    sol = solve(net, t.arcs, t.g, mode=args.mode)
    return t, net, sol


def cmd_solve(args) -> int:
    _t, _net, sol = _solved(args)
    _emit(
        {
            "g": _num(sol.g),
            "mode": sol.mode,
            "values": {v: _num(x) for v, x in sorted(sol.values.items())},
            "residual": _num(sol.residual),
        }
    )
    return EXIT_OK


def cmd_metric(args) -> int:
    _t, net, sol = _solved(args)
    metric = gradient_metric(sol, net)
    constants = network_constants(net)
    _emit(
        {
            "rho": {v: metric.rho[v] for v in sorted(metric.rho)},
            "rhoSquared": {v: _num(metric.rho_sq[v]) for v in sorted(metric.rho_sq)},
            "m": constants.m,
            "M": constants.big_m,
            "k": constants.k,
        }
    )
    return EXIT_OK


def cmd_paths(args) -> int:
    t, net, sol = _solved(args)
    metric = gradient_metric(sol, net)
    variant = args.thick_horizontal_variant == "deltaF"
    try:
        best = shortest_thick_path(metric, t, net, args.orientation, variant)
    except NoThickPathError as exc:
        _emit({"orientation": args.orientation, "absent": str(exc)})
        return EXIT_NO_PATH
    out = {
        "orientation": best.orientation,
        "vertices": list(best.vertices),
        "length": best.length,
        "lengthSquaredTerms": [_num(x) for x in best.length_sq_terms],
    }
    if args.oracle:
        all_paths = enumerate_thick_paths(
            t, net, args.orientation, metric, horizontal_variant=variant
        )
        agrees = bool(all_paths) and abs(all_paths[0].length - best.length) <= 1e-12
        out["oracle"] = {
            "feasibleCount": len(all_paths),
            "agrees": agrees,
        }
        if not agrees:
            _emit(out)
            return EXIT_FAIL
    _emit(out)
    return EXIT_OK


def _verify_one(path: Path, args):
    t = parse_quadnet(path.read_text(encoding="utf-8"))
    report = bounds_mod.build_report(
        t,
        mode=args.mode,
        with_chain=args.chain,
        horizontal_variant=args.thick_horizontal_variant == "deltaF",
        instance=path.name,
    )
    return bounds_mod.report_json(report), report.all_pass


def cmd_verify(args) -> int:
    target = Path(args.file)
    if target.is_dir():
        files = sorted(target.glob("*.quadnet"))
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda p: _verify_one(p, args), files))
        _emit([obj for obj, _ok in results])
        return EXIT_OK if all(ok for _obj, ok in results) else EXIT_FAIL
    obj, ok = _verify_one(target, args)
    _emit(obj)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_generate(args) -> int:
    t = generate_grid(
        args.rows,
        args.cols,
        args.diagonal,
        seed=args.seed,
        c_min=args.cmin,
        c_max=args.cmax,
        conductance=None if args.seed is not None else Fraction(1),
    )
    Path(args.output).write_text(serialize_quadnet(t), encoding="utf-8")
    return EXIT_OK


def cmd_svg(args) -> int:
    t, net, sol = _solved(args)
    metric = gradient_metric(sol, net)
    paths = []
    for orientation in ("vertical", "horizontal"):
        try:
            paths.append(shortest_thick_path(metric, t, net, orientation))
        except NoThickPathError:
            pass
    Path(args.output).write_text(render_svg(t, metric, paths), encoding="utf-8")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadnet")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, mode=True):
        p.add_argument("file")
        if mode:
            p.add_argument("--mode", choices=("exact", "float"), default="exact")
            p.add_argument("--g", default=None, help="override the Dirichlet constant")

    p = sub.add_parser("validate", help="check structural invariants")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="solve the boundary value problem")
    add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("metric", help="gradient metric and network constants")
    add_common(p)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("paths", help="shortest thick path")
    add_common(p)
    p.add_argument("--orientation", choices=("vertical", "horizontal"), required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check against enumeration")
    p.add_argument("--thick-horizontal-variant", choices=("default", "deltaF"), default="default")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("verify", help="verify all bounds for a file or directory")
    add_common(p)
    p.add_argument("--chain", action="store_true", help="include the full proof chain")
    p.add_argument("--thick-horizontal-variant", choices=("default", "deltaF"), default="default")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="generate a triangulated grid instance")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--diagonal", choices=("bl-tr", "br-tl", "alternating"), default="bl-tr")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cmin", type=float, default=0.1)
    p.add_argument("--cmax", type=float, default=10.0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("svg", help="render the instance as an SVG figure")
    add_common(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_svg)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QuadnetParseError, SvgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (FileNotFoundError, EnumerationGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
