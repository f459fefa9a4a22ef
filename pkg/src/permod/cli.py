"""Command-line surface.

Verbs: present validate|minimize, distance interleaving|bottleneck, diagram,
filtration rips|cech, homology present2d|grid|image, export quadsys,
infer run.  Exit codes: 0 ok, 2 parse/usage errors, 3 solver budget
exhausted.
"""

import argparse
import sys
from fractions import Fraction

from .exactnum import parse_field, parse_rational
from .filtration import (DensitySpec, FiltrationError, parse_complex,
                         parse_points_csv, parse_values_csv)
from .homology import (HomologyError, grid_module_of, image_grid_module,
                       present_homology)
from .interleave import (DistanceBudgetExceeded, assemble_system,
                         candidate_set, decide_interleaving,
                         interleaving_distance)
from .onedim import bottleneck, diagram_of, parse_diagram
from .presentation import PresentationError, parse_presentation
from .quadsys import BudgetExceeded, DEFAULT_BUDGET, QuadSysError
from .infer import run_experiment

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_presentation(path):
    try:
        return parse_presentation(_read(path))
    except PresentationError as exc:
        raise CliError(f"{path}: {exc}")


def _load_pair(path_m, path_n):
    m, n = _load_presentation(path_m), _load_presentation(path_n)
    if m.n != n.n:
        raise CliError(f"parameter counts differ: {m.n} vs {n.n}")
    if m.field != n.field:
        raise CliError(f"fields differ: {m.field.spec} vs {n.field.spec}")
    return m, n


def cmd_present(args):
    p = _load_presentation(args.file)
    if args.action == "validate":
        print(f"ok: n={p.n} field={p.field.spec} "
              f"generators={len(p.generators)} relations={len(p.relations)}")
    else:
        _write(args.out, p.minimize().to_text())
    return EXIT_OK


def cmd_distance_interleaving(args):
    m, n = _load_pair(args.module_m, args.module_n)
    budget = args.budget
    if args.export_quadsys:
        eps = parse_rational(args.decide) if args.decide else Fraction(0)
        from .presentation import MonotoneAffineMap
        j = MonotoneAffineMap.translation(m.n, eps)
        _write(args.export_quadsys,
               assemble_system(m.minimize(), n.minimize(), j, j).export_text())
    if args.decide is not None:
        eps = parse_rational(args.decide)
        try:
            answer = decide_interleaving(m, n, eps, budget=budget)
        except BudgetExceeded as exc:
            print(f"budget exceeded after {exc.nodes} nodes")
            return EXIT_BUDGET
        print(answer)
        return EXIT_OK
    cands = candidate_set(m, n)
    from .interleave import SearchStats
    stats = SearchStats()
    try:
        d = interleaving_distance(m, n, budget=budget, stats=stats)
    except DistanceBudgetExceeded as exc:
        lo, hi = exc.bracket
        print(f"budget exceeded; d_I in [{lo}, {hi}]")
        return EXIT_BUDGET
    print(f"d_I = {d}")
    print(f"candidates = {len(cands)}")
    print(f"solver: {stats.decisions} decisions, {stats.nodes} search nodes")
    return EXIT_OK


def cmd_distance_bottleneck(args):
    try:
        d1 = parse_diagram(_read(args.diagram_1))
        d2 = parse_diagram(_read(args.diagram_2))
    except ValueError as exc:
        raise CliError(str(exc))
    print(f"d_B = {bottleneck(d1, d2)}")
    return EXIT_OK


def cmd_diagram(args):
    p = _load_presentation(args.file)
    if p.n != 1:
        raise CliError("diagram requires a 1-parameter presentation")
    _write(args.out, diagram_of(p).to_text())
    return EXIT_OK


def cmd_filtration(args):
    try:
        cloud = parse_points_csv(_read(args.points))
        if args.function:
            values = parse_values_csv(_read(args.function))
            if len(values) != len(cloud):
                raise CliError("points and function files have different row counts")
        else:
            values = [(Fraction(0),)] * len(cloud)
        if args.negate_function:
            values = [tuple(-x for x in row) for row in values]
        metric = {"l1": 1, "l2": 2, "linf": "inf"}[args.metric]
        cap = parse_rational(args.scale_cap)
        from .filtration import cech_bifiltration, rips_bifiltration
        build = rips_bifiltration if args.kind == "rips" else cech_bifiltration
        cx = build(cloud, metric, values, args.max_dim, cap)
    except (FiltrationError, KeyError, ValueError) as exc:
        raise CliError(str(exc))
    _write(args.out, cx.to_text())
    return EXIT_OK


def _parse_axes(spec):
    return [[parse_rational(t) for t in chunk.split(",")]
            for chunk in spec.split(";")]


def _default_axes_complex(cx, drop_scale=False):
    grades = [g for _, g in cx.grades_rational()]
    count = cx.nparams - (1 if drop_scale else 0)
    return [sorted({g[i] for g in grades}) for i in range(count)]


def cmd_homology(args):
    field = parse_field(args.field)
    text = _read(args.complex)
    is_presentation = text.lstrip().startswith("PRESENTATION")
    try:
        if args.action == "present2d":
            cx = parse_complex(text)
            if cx.nparams != 2:
                raise CliError("present2d requires a 2-parameter complex")
            pres = present_homology(cx, args.degree, field)
            print("hilbert check: ok")
            _write(args.out, pres.to_text())
        elif args.action == "grid":
            if is_presentation:
                src = parse_presentation(text)
                axes = (_parse_axes(args.axes) if args.axes
                        else src.critical_grades()[1])
                gm = grid_module_of(src, axes)
            else:
                cx = parse_complex(text)
                axes = (_parse_axes(args.axes) if args.axes
                        else _default_axes_complex(cx))
                gm = grid_module_of(cx, axes, degree=args.degree, field=field)
            _write(args.out, gm.to_text())
        else:
            cx = parse_complex(text)
            axes = (_parse_axes(args.axes) if args.axes
                    else _default_axes_complex(cx, drop_scale=True))
            gm = image_grid_module(cx, args.degree,
                                   parse_rational(args.delta1),
                                   parse_rational(args.delta2), axes, field)
            _write(args.out, gm.to_text())
    except (FiltrationError, HomologyError, PresentationError, ValueError) as exc:
        raise CliError(str(exc))
    return EXIT_OK


def cmd_export_quadsys(args):
    m, n = _load_pair(args.module_m, args.module_n)
    eps = parse_rational(args.eps)
    from .presentation import MonotoneAffineMap
    j = MonotoneAffineMap.translation(m.n, eps)
    _write(args.out, assemble_system(m, n, j, j).export_text())
    return EXIT_OK


def cmd_infer(args):
    try:
        density = DensitySpec.parse(args.density)
        samples = [int(t) for t in args.samples.split(",")]
        if samples != sorted(samples):
            raise CliError("sample sizes must be ascending")
        grid_points = int(args.grid) if args.grid else 33
        rec = run_experiment(density, samples, args.trials, args.seed,
                             parse_rational(args.bandwidth),
                             degree=args.degree, kernel=args.kernel,
                             grid_points=grid_points)
    except (FiltrationError, ValueError) as exc:
        raise CliError(str(exc))
    _write(args.out, rec.to_json())
    return EXIT_OK


def build_parser():
    top = argparse.ArgumentParser(prog="permod", description=__doc__)
    top.add_argument("--field", nargs=2, default=["zp", "2"],
                     metavar=("KIND", "P"), help="coefficient field, e.g. zp 2")
    top.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                     help="solver node budget")
    top.add_argument("--seed", type=int, default=0)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present")
    p.add_argument("action", choices=["validate", "minimize"])
    p.add_argument("file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_present)

    d = sub.add_parser("distance")
    dsub = d.add_subparsers(dest="which", required=True)
    di = dsub.add_parser("interleaving")
    di.add_argument("module_m")
    di.add_argument("module_n")
    di.add_argument("--decide", default=None, metavar="EPS")
    di.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    di.add_argument("--export-quadsys", default=None, metavar="PATH")
    di.set_defaults(func=cmd_distance_interleaving)
    db = dsub.add_parser("bottleneck")
    db.add_argument("diagram_1")
    db.add_argument("diagram_2")
    db.set_defaults(func=cmd_distance_bottleneck)

    g = sub.add_parser("diagram")
    g.add_argument("file")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_diagram)

    ft = sub.add_parser("filtration")
    ft.add_argument("kind", choices=["rips", "cech"])
    ft.add_argument("--points", required=True)
    ft.add_argument("--function", default=None)
    ft.add_argument("--negate-function", action="store_true")
    ft.add_argument("--metric", default="l2", choices=["l1", "l2", "linf"])
    ft.add_argument("--max-dim", type=int, default=2)
    ft.add_argument("--scale-cap", default="1000000")
    ft.add_argument("--out", default=None)
    ft.set_defaults(func=cmd_filtration)

    h = sub.add_parser("homology")
    h.add_argument("action", choices=["present2d", "grid", "image"])
    h.add_argument("--complex", required=True)
    h.add_argument("--degree", type=int, default=0)
    h.add_argument("--axes", default=None)
    h.add_argument("--delta1", default="0")
    h.add_argument("--delta2", default="0")
    h.add_argument("--out", default=None)
    h.set_defaults(func=cmd_homology)

    e = sub.add_parser("export")
    esub = e.add_subparsers(dest="which", required=True)
    eq = esub.add_parser("quadsys")
    eq.add_argument("module_m")
    eq.add_argument("module_n")
    eq.add_argument("--eps", default="0")
    eq.add_argument("--out", default=None)
    eq.set_defaults(func=cmd_export_quadsys)

    inf_ = sub.add_parser("infer")
    isub = inf_.add_subparsers(dest="which", required=True)
    ir = isub.add_parser("run")
    ir.add_argument("--density", required=True)
    ir.add_argument("--samples", required=True)
    ir.add_argument("--trials", type=int, default=1)
    ir.add_argument("--seed", type=int, default=0)
    ir.add_argument("--bandwidth", default="1/5")
    ir.add_argument("--kernel", default="gaussian",
                    choices=["gaussian", "epanechnikov"])
    ir.add_argument("--grid", default=None)
    ir.add_argument("--degree", type=int, default=0)
    ir.add_argument("--out", default=None)
    ir.set_defaults(func=cmd_infer)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PresentationError, QuadSysError, FiltrationError, HomologyError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
