"""Command-line interface: ``toruspack <subcommand> ...``.

Exit codes: 0 success, 1 negative verdict under --strict, 2 bad input,
3 a checked theorem failed (a bug).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io, lattice, packing, rigidity, svg, tilings
from .cyclotomic import QuadExt
from .errors import (ConsistencyError, ContainmentError, DegenerateLatticeError, InvalidPackingError,
                     MalformedTilingError, StripsPresentError, TheoremViolation)
from .optimizer import OptimizerConfig, best_run, run_pool, square_torus, triangular_torus

INPUT_ERRORS = (io.FormatError, DegenerateLatticeError, ContainmentError, InvalidPackingError,
                MalformedTilingError, StripsPresentError, ValueError, TypeError, OSError)


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _emit(doc: dict, out: str | None) -> None:
    text = io.dumps(doc)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _read_doc(path: str) -> dict:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return io.loads(text)


# -- subcommands --------------------------------------------------------------------------


def cmd_classify_number(args) -> int:
    ok, w = lattice.is_triangle_lattice_number(args.n)
    print(f"yes ({w[0]},{w[1]})" if ok else "no")
    return 1 if args.strict and not ok else 0


def cmd_gen_triangular(args) -> int:
    p = packing.build_triangular_packing(args.n1, args.n2)
    _emit(io.packing_to_json(p, n1=args.n1, n2=args.n2), args.output)
    return 0


def cmd_gen_strip(args) -> int:
    meta = {"a": args.a, "b": args.b, "c": args.c}
    if args.auto_torus:
        found = tilings.strip_on_triangular_torus(args.a, args.b, args.c, bound=args.bound)
        if found is None:
            raise CliError(f"no triangular torus carries the ({args.a}, {args.b}, {args.c}) strip tiling "
                           f"with coefficients up to {args.bound}", code=1)
        ns, g = found
        meta["n"] = list(ns)
    elif args.g:
        g = (io.parse_quad(args.g[0]), io.parse_quad(args.g[1]))
    else:
        g = (QuadExt(0), QuadExt(1))
    meta["g"] = [io.encode_scalar(g[0]), io.encode_scalar(g[1])]
    t, p = tilings.build_strip_tiling(args.a, args.b, args.c, g)
    doc = io.tiling_to_json(t) if args.tiling else io.packing_to_json(p, **meta)
    _emit(doc, args.output)
    return 0


def cmd_gen_tiling(args) -> int:
    kinds = {
        "dodecagonal": tilings.dodecagonal_square_triangle_tiling,
        "snub-square": tilings.snub_square_tiling,
        "triangle": lambda: tilings.triangle_tiling(args.n1, args.n2),
        "rhombus-grid": lambda: tilings.rhombus_grid_tiling(
            args.p, args.q, args.s, (io.parse_quad(args.g[0]), io.parse_quad(args.g[1]))),
    }
    t = kinds[args.kind]()
    _emit(io.packing_to_json(t.to_packing()) if args.packing else io.tiling_to_json(t), args.output)
    return 0


def cmd_analyze(args) -> int:
    doc = _read_doc(args.packing)
    obj = io.load_any(doc)
    p = obj.to_packing() if isinstance(obj, tilings.Tiling) else obj
    exact = False if args.float else None
    if args.exact and not p.exact:
        raise CliError("--exact needs exact coordinates")
    rep = rigidity.analyze(p, args.tol, exact=exact)
    if rep.collectively_jammed and not rep.contact_count_ok:
        raise TheoremViolation("jammed packing with fewer than 2n - 1 contacts")
    _emit(rep.to_json(), args.output)
    return 1 if args.strict and not rep.collectively_jammed else 0


def cmd_flex(args) -> int:
    t = io.load_any(_read_doc(args.tiling))
    if not isinstance(t, tilings.Tiling):
        raise CliError("flex needs a tiling document")
    thetas = [args.theta] if args.sweep <= 1 else list(np.linspace(0.0, args.theta, args.sweep))
    rows = []
    for th in thetas:
        fc = tilings.flex(t, float(th))
        fl = tilings.flexed_lattice(t, float(th))
        rows.append({
            "theta": float(th),
            "shape": fl.shape,
            "area": fl.area,
            "lengths": list(fl.lengths),
            "cos_angle": fl.cos_angle,
            "max_edge_error": float(np.abs(fc.edge_lengths(t) - 1).max()),
            "quad_angles": tilings.quad_angles(t, float(th)),
        })
    _emit({"samples": rows}, args.output)
    return 0


def _lattice_arg(spec: str):
    if spec == "triangular":
        return triangular_torus()
    if spec == "square":
        return square_torus()
    return io.lattice_from_json(_read_doc(spec))


def cmd_optimize(args) -> int:
    l = _lattice_arg(args.lattice)
    cfg = OptimizerConfig(max_iters=args.max_iters, step_cap=args.step_cap, seed=args.seed)
    seeds = range(args.seed, args.seed + args.seeds)
    records = run_pool(args.n, l, seeds, cfg, threads=args.threads)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "manifest.json").write_text(io.dumps(io.manifest_to_json(args.n, l, cfg, records)) + "\n")
    best = best_run(records)
    (out / "best.json").write_text(io.dumps(io.packing_to_json(best.packing)) + "\n")
    print(f"best density {best.density:.12f} (ratio {best.density / packing.DELTA_TRI:.12f}) seed {best.seed}")
    return 0


def cmd_gap_check(args) -> int:
    p = io.packing_from_json(_read_doc(args.packing))
    n = p.n
    bound = Fraction(n, n + 1)
    ratio = packing.density_ratio(p)
    below = ratio < bound if p.exact else float(ratio) < float(bound)
    doc = {
        "n": n,
        "density": packing.density(p, args.tol),
        "ratio": io.encode_scalar(ratio) if p.exact else float(ratio),
        "bound": f"{n}/{n + 1}",
        "margin": float(bound) - float(ratio),
        "below_bound": bool(below),
    }
    _emit(doc, args.output)
    return 1 if args.strict and not below else 0


def cmd_census(args) -> int:
    c = tilings.square_triangle_census(args.a, args.b)
    print(f"f3={c.f3} f4={c.f4} ratio={float(c.ratio):g}")
    return 0


def cmd_render(args) -> int:
    obj = io.load_any(_read_doc(args.input))
    text = svg.render_tiling(obj, args.block) if isinstance(obj, tilings.Tiling) else svg.render_packing(obj, args.block)
    Path(args.output).write_text(text)
    return 0


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toruspack", description="Equal-disk packings on flat tori.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify-number", help="is n a triangle lattice number")
    s.add_argument("n", type=int)
    s.add_argument("--strict", action="store_true")
    s.set_defaults(func=cmd_classify_number)

    s = sub.add_parser("gen-triangular", help="triangular packing on Lambda(z, g_delta z)")
    s.add_argument("--n1", type=int, required=True)
    s.add_argument("--n2", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_triangular)

    s = sub.add_parser("gen-strip", help="triangle-rhombus strip packing")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--auto-torus", action="store_true", help="choose g so the torus is triangular")
    s.add_argument("--g", nargs=2, metavar=("RE", "IM"), help="rhombus direction, e.g. 1/7 4/7*sqrt3")
    s.add_argument("--bound", type=int, default=32)
    s.add_argument("--tiling", action="store_true", help="write the tiling instead of the packing")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_strip)

    s = sub.add_parser("gen-tiling", help="named tilings")
    s.add_argument("kind", choices=["dodecagonal", "snub-square", "triangle", "rhombus-grid"])
    s.add_argument("--n1", type=int, default=1)
    s.add_argument("--n2", type=int, default=0)
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--q", type=int, default=1)
    s.add_argument("--s", type=int, default=0)
    s.add_argument("--g", nargs=2, metavar=("RE", "IM"), default=["0", "1"])
    s.add_argument("--packing", action="store_true", help="write the vertex packing instead")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_tiling)

    s = sub.add_parser("analyze", help="jamming report for a packing (or tiling) file, '-' for stdin")
    s.add_argument("packing")
    s.add_argument("--tol", type=float, default=packing.DEFAULT_TOL)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="require the exact path")
    mode.add_argument("--float", action="store_true", help="force the floating path")
    s.add_argument("--strict", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("flex", help="rotation flex of a cyclotomic tiling")
    s.add_argument("tiling")
    s.add_argument("--theta", type=float, required=True)
    s.add_argument("--sweep", type=int, default=1, help="sample this many angles in [0, theta]")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_flex)

    s = sub.add_parser("optimize", help="inflation runs from random starts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lattice", default="triangular", help="triangular, square or a lattice JSON file")
    s.add_argument("--seeds", type=int, default=10)
    s.add_argument("--seed", type=int, default=0, help="first seed")
    s.add_argument("--max-iters", type=int, default=2000)
    s.add_argument("--step-cap", type=float, default=0.05)
    s.add_argument("--threads", type=int)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("gap-check", help="compare density with (n/(n+1)) pi/sqrt(12)")
    s.add_argument("packing")
    s.add_argument("--tol", type=float, default=packing.DEFAULT_TOL)
    s.add_argument("--strict", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gap_check)

    s = sub.add_parser("census", help="face counts of square-triangle tilings")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("render", help="SVG of a packing or tiling")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--block", type=int, default=2)
    s.set_defaults(func=cmd_render)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"toruspack: {exc}", file=sys.stderr)
        return exc.code
    except (TheoremViolation, ConsistencyError) as exc:
        print(f"toruspack: internal check failed: {exc}", file=sys.stderr)
        return 3
    except INPUT_ERRORS as exc:
        print(f"toruspack: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
