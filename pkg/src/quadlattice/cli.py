"""Command line surface: classify, lattice, verify, sweep.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .core import make_context, unit_group
from .errors import QuadLatticeError
from .export import lattice_document, render_generator, to_dot, to_json
from .lattice import basic_layer, hasse, layer_n
from .oracle import configured_budget, verify_theorems
from .splitting import (
    DEFAULT_CLASS_CAP,
    SplittingType,
    conductor_factorization,
    split_data,
)

__all__ = ["main", "run"]


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_classify(args: argparse.Namespace) -> int:
    if args.factor_only:
        components = conductor_factorization(args.d, args.f)
        doc = {
            "d": args.d,
            "f": args.f,
            "components": [
                {"primary": [g.q, g.r, g.s], "radical": [r.q, r.r, r.s]}
                for g, r in components
            ],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
        return 0
    ctx = make_context(args.d, args.f)
    sd = split_data(ctx, args.class_cap)
    ug = unit_group(ctx)
    doc = {
        "d": ctx.d,
        "f": ctx.f,
        "discD": ctx.disc_D,
        "discO": ctx.disc_O,
        "splitting": sd.stype.value,
        "tau": sd.tau,
        "m": sd.m,
        "beta": render_generator(sd.beta) if sd.beta is not None else None,
        "P": [sd.P.q, sd.P.r, sd.P.s] if sd.P is not None else None,
        "cosetReps": [render_generator(u) for u in ug.coset_reps],
        "fundamentalUnit": (
            render_generator(ug.fundamental) if ug.fundamental is not None else None
        ),
    }
    if args.json:
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = [
            f"order: Z[{ctx.f}*w], d = {ctx.d}, disc(D) = {ctx.disc_D}, disc(O) = {ctx.disc_O}",
            f"splitting of {ctx.f}: {sd.stype.value}",
            f"tau = |D*/O*| = {sd.tau} (coset reps {', '.join(map(str, ug.coset_reps))})",
        ]
        if sd.P is not None:
            lines.append(f"P = ({sd.P.q}, {sd.P.r}+{sd.P.s}*w)")
        if sd.m is not None:
            lines.append(f"class order m = {sd.m}, beta = {sd.beta}")
        elif sd.stype is SplittingType.RAMIFIED:
            gen = "not principal" if sd.beta is None else f"beta = {sd.beta}"
            lines.append(f"P principal: {gen}")
        if ug.fundamental is not None:
            lines.append(f"fundamental unit = {ug.fundamental}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_lattice(args: argparse.Namespace) -> int:
    if args.layers < 1:
        raise QuadLatticeError("--layers must be >= 1")
    ctx = make_context(args.d, args.f)
    sd = split_data(ctx, args.class_cap)
    basic = basic_layer(ctx, sd, args.depth)
    nodes = []
    for n in range(1, args.layers + 1):
        nodes.extend(layer_n(ctx, basic, n))
    graph = hasse(ctx, nodes, include_top=args.include_top)
    doc = lattice_document(ctx, sd, graph)
    if args.format == "json":
        _emit(to_json(doc) + "\n", args.output)
    else:
        _emit(to_dot(doc), args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    ctx = make_context(args.d, args.f)
    report = verify_theorems(
        ctx,
        args.k,
        with_oracle=args.oracle,
        budget=args.budget,
        class_cap=args.class_cap,
    )
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.output)
    if not report.passed:
        for failure in report.failures():
            sys.stderr.write(f"FAIL {failure.name}: {failure.claim}\n")
        return 1
    return 0


def _sweep_cell(cell: tuple[int, int, int, bool, int]) -> dict:
    d, f, k, oracle, class_cap = cell
    try:
        ctx = make_context(d, f)
        report = verify_theorems(ctx, k, with_oracle=oracle, class_cap=class_cap)
        return {
            "d": d,
            "f": f,
            "passed": report.passed,
            "failedChecks": [c.name for c in report.failures()],
        }
    except QuadLatticeError as exc:
        return {"d": d, "f": f, "passed": False, "failedChecks": [f"error: {exc}"]}


def _cmd_sweep(args: argparse.Namespace) -> int:
    ds = [int(tok) for tok in args.d.split(",") if tok.strip()] if args.d else []
    fs = [int(tok) for tok in args.f.split(",") if tok.strip()] if args.f else []
    cells = [(d, f, args.k, args.oracle, args.class_cap) for d in ds for f in fs]
    if args.jobs > 1 and cells:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_cell, cells))
    else:
        results = [_sweep_cell(cell) for cell in cells]
    doc = {
        "k": args.k,
        "cells": results,
        "allPassed": all(cell["passed"] for cell in results),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return 0 if doc["allPassed"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadlattice",
        description=(
            "Construct, classify and verify the lattice of conductor-primary "
            "ideals of the quadratic order Z[f*w]."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--class-cap", type=int, default=DEFAULT_CLASS_CAP,
                       help="iteration cap for the class-order search")
        p.add_argument("--output", "-o", default=None, help="write to file instead of stdout")

    p_classify = sub.add_parser("classify", help="splitting type, unit index and class data")
    p_classify.add_argument("--d", type=int, required=True)
    p_classify.add_argument("--f", type=int, required=True)
    p_classify.add_argument("--json", action="store_true")
    p_classify.add_argument("--factor-only", action="store_true",
                            help="factor a composite conductor instead of classifying")
    common(p_classify)
    p_classify.set_defaults(func=_cmd_classify)

    p_lattice = sub.add_parser("lattice", help="emit the lattice as JSON or DOT")
    p_lattice.add_argument("--d", type=int, required=True)
    p_lattice.add_argument("--f", type=int, required=True)
    p_lattice.add_argument("--layers", type=int, default=1)
    p_lattice.add_argument("--depth", type=int, default=4,
                           help="split-case truncation depth K")
    p_lattice.add_argument("--format", choices=("json", "dot"), default="json")
    p_lattice.add_argument("--include-top", action="store_true",
                           help="add the whole ring as the top node")
    common(p_lattice)
    p_lattice.set_defaults(func=_cmd_lattice)

    p_verify = sub.add_parser("verify", help="run the conformance checks")
    p_verify.add_argument("--d", type=int, required=True)
    p_verify.add_argument("--f", type=int, required=True)
    p_verify.add_argument("--k", type=int, default=4)
    p_verify.add_argument("--oracle", action="store_true",
                          help="include the brute-force enumeration checks")
    p_verify.add_argument("--budget", type=int, default=None,
                          help=f"candidate cap (default {configured_budget()})")
    common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="verify a whole (d, f) grid")
    p_sweep.add_argument("--d", required=True, help="comma-separated d values")
    p_sweep.add_argument("--f", required=True, help="comma-separated f values")
    p_sweep.add_argument("--k", type=int, default=4)
    p_sweep.add_argument("--oracle", action="store_true")
    p_sweep.add_argument("--jobs", type=int, default=1)
    common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except QuadLatticeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def run() -> None:
    sys.exit(main())
