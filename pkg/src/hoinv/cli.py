"""Command-line interface.

Exit codes: 0 all checks verified/observed/skipped, 1 any violated check or
selftest failure, 2 input error (malformed file, bad instance, inapplicable
command).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import magnus
from .checks import run_checks
from .groupalg import ExtComplex, free_resolution, graded_dims_from_group
from .instances import InstanceError, build_instance, load_instance
from .invariants import invariants_filtration
from .magnus import MemoryCapExceeded
from .report import scalar_json

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoinv",
        description="Exact invariant filtrations, augmentation-graded "
                    "dimensions, and layer cohomology of group "
                    "representations, with a structure-theorem verifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="parse and validate an instance file")
    p_info.add_argument("file")

    p_grades = sub.add_parser("grades",
                              help="graded dimensions N(q) of the augmentation filtration")
    p_grades.add_argument("file")
    p_grades.add_argument("--qmax", type=int, default=None,
                          help="largest q (default: the instance limit)")
    p_grades.add_argument("--figures", metavar="DIR", default=None)

    p_inv = sub.add_parser("invariants",
                           help="invariant filtration dimensions and bases")
    p_inv.add_argument("file")
    p_inv.add_argument("--qmax", type=int, default=None)
    p_inv.add_argument("--figures", metavar="DIR", default=None)

    p_coh = sub.add_parser("cohomology",
                           help="layer cohomology dimensions (finite groups only)")
    p_coh.add_argument("file")
    p_coh.add_argument("--q", type=int, required=True)
    p_coh.add_argument("--pmax", type=int, default=None)
    p_coh.add_argument("--figures", metavar="DIR", default=None)

    p_verify = sub.add_parser("verify", help="run the full check battery")
    p_verify.add_argument("file")
    p_verify.add_argument("--json", metavar="OUT", default=None,
                          help='write the JSON report here ("-" for stdout)')
    p_verify.add_argument("--figures", metavar="DIR", default=None)

    sub.add_parser("selftest", help="run the built-in corpus and operation battery")
    return parser


def _cmd_info(args) -> int:
    spec = load_instance(args.file)
    built = build_instance(spec)
    print(f"instance\t{spec.name}")
    print(f"field\t{spec.field.tag}")
    print(f"group\t{spec.kind}\tgenerators: {' '.join(spec.generators)}")
    if built.group is not None:
        print(f"order\t{built.group.size}")
    else:
        print(f"relators\t{' ; '.join(spec.relators) or '(none)'}")
    print(f"representation\tdim {built.rep.dim}")
    if spec.subgroup is not None:
        print(f"subgroup\t{' ; '.join(spec.subgroup)}")
    lim = spec.limits
    print(f"limits\tq_max={lim.q_max}\tp_max={lim.p_max}"
          + (f"\ttrunc={lim.trunc}" if lim.trunc is not None else ""))
    print("status\tvalid")
    return EXIT_OK


def _grades_values(built, q_max):
    if built.is_finite_group:
        return graded_dims_from_group(built.group, built.field, q_max)
    return list(magnus.graded_dims(built.presentation, built.field, q_max,
                                   built.spec.limits.memory_cap))


def _cmd_grades(args) -> int:
    spec = load_instance(args.file)
    built = build_instance(spec)
    q_max = args.qmax if args.qmax is not None else \
        (spec.limits.trunc if spec.limits.trunc is not None else spec.limits.q_max)
    try:
        values = _grades_values(built, q_max)
    except MemoryCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"# {spec.name}: N(q) for q = 0..{q_max}")
    print(" ".join(str(v) for v in values))
    if args.figures:
        from .plots import plot_graded_dims
        path = plot_graded_dims(values, Path(args.figures) / f"{spec.name}_grades.png",
                                title=f"{spec.name}: graded dimensions")
        print(f"figure\t{path}")
    return EXIT_OK


def _cmd_invariants(args) -> int:
    spec = load_instance(args.file)
    built = build_instance(spec)
    q_max = args.qmax if args.qmax is not None else spec.limits.q_max
    filt = invariants_filtration(built.rep, q_max)
    field = built.field
    print("q\tdim\tbasis")
    for q, space in enumerate(filt.spaces):
        rows = [[scalar_json(field, x) for x in row] for row in space.basis]
        print(f"{q}\t{space.dim}\t{rows}")
    if args.figures:
        from .plots import plot_filtration
        path = plot_filtration(filt.dims(),
                               Path(args.figures) / f"{spec.name}_filtration.png",
                               title=f"{spec.name}: invariant filtration")
        print(f"figure\t{path}")
    return EXIT_OK


def _cmd_cohomology(args) -> int:
    spec = load_instance(args.file)
    built = build_instance(spec)
    if not built.is_finite_group:
        print("error: cohomology needs an enumerated finite group "
              "(presentation finiteness is unknown)", file=sys.stderr)
        return EXIT_INPUT
    if args.q < 0:
        print("error: --q must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    p_max = args.pmax if args.pmax is not None else spec.limits.p_max
    from .groupalg import augmentation_quotient_module
    module, _ = augmentation_quotient_module(built.group, built.field, args.q + 1)
    res = free_resolution(built.group, built.field, module, p_max + 1)
    cx = ExtComplex(res, built.rep.amodule)
    dims = [cx.group(p).dim for p in range(p_max + 1)]
    print(f"# {spec.name}: layer cohomology at q = {args.q}")
    print("p\t" + "\t".join(str(p) for p in range(p_max + 1)))
    print("dim\t" + "\t".join(str(v) for v in dims))
    if args.figures:
        from .plots import plot_ext_table
        path = plot_ext_table([dims], Path(args.figures) / f"{spec.name}_ext_q{args.q}.png",
                              title=f"{spec.name}: layer cohomology at q={args.q}")
        print(f"figure\t{path}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = load_instance(args.file)
    report = run_checks(spec)
    json_text = report.to_json()
    if args.json == "-":
        sys.stdout.write(json_text)
    else:
        for line in report.human_lines():
            print(line)
        if args.json:
            Path(args.json).write_text(json_text, encoding="utf-8")
            print(f"json\t{args.json}")
    if args.figures:
        from .plots import render_report_figures
        for path in render_report_figures(report, args.figures):
            print(f"figure\t{path}")
    return EXIT_VIOLATION if report.has_violation else EXIT_OK


def _cmd_selftest(_args) -> int:
    from .selftest import run_selftest
    return EXIT_OK if run_selftest(out=print) else EXIT_VIOLATION


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "info": _cmd_info,
        "grades": _cmd_grades,
        "invariants": _cmd_invariants,
        "cohomology": _cmd_cohomology,
        "verify": _cmd_verify,
        "selftest": _cmd_selftest,
    }
    try:
        return handlers[args.command](args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
