"""Command-line interface.

Domain specs are JSON objects::

    {
      "base": {"type": "rectangle", "x0": 0.0, "x1": 1.0,
               "y0": 0.0, "y1": 3.141592653589793}
            | {"type": "disc", "center": [0.0, 0.0], "radius": 1.0},
      "map":  {"type": "identity"}
            | {"type": "affine", "a": [re, im], "b": [re, im]}
            | {"type": "exp"} | {"type": "sin"}
            | {"type": "power", "n": 2}
            | {"type": "mobius", "a": [..], "b": [..], "c": [..], "d": [..]}
            | {"type": "compose", "maps": [...]},   # applied right to left
      "inradius": 0.5,                        # optional declared inradius
      "convex_radii": {"ro": .., "ri": .., "rc": ..},   # optional
      "area": 3.14                            # optional declared image area
    }

Commands:

* ``bounds``  - evaluate the lambda1 bound catalogue for a spec
* ``table``   - bound table for a built-in example family over several d
* ``oracle``  - validate the bounds against finite-difference eigenvalues
* ``gap``     - spectral-gap estimates for a unit-disc spec
* ``check-regularity`` - probe finiteness of the alpha-norms

Exit codes: 0 success, 2 input error, 3 computation error, 4 no valid
bound.  CSV output always carries the header
``method,value,valid,preconditions,notes`` with one row per bound.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import bounds as bound_ops
from .bounds import BoundResult, Method, best_bound
from .errors import ConfeigError, NoValidBound, SpecFormatError
from .geometry import exact_lambda1, half_annulus_spec, slit_ellipse_spec
from .norms import QuadratureConfig, norm_sup, regularity_profile, is_conformal_regular
from .oracle import ValidationReport, validate
from .specio import load_spec


def _parse_float_list(text: str, what: str) -> list[float]:
    items = [part.strip() for part in text.split(",") if part.strip()]
    if not items:
        raise SpecFormatError(f"{what} requires a non-empty comma-separated list")
    try:
        return [float(item) for item in items]
    except ValueError as exc:
        raise SpecFormatError(f"bad value in {what}: {exc}") from exc


def _quad_from_args(args) -> Optional[QuadratureConfig]:
    if args.quad_nodes is None and args.quad_panels is None:
        return None
    defaults = QuadratureConfig()
    return QuadratureConfig(
        nodes_per_axis=args.quad_nodes or defaults.nodes_per_axis,
        panels_per_axis=args.quad_panels or defaults.panels_per_axis,
    )


def _preconditions_cell(result: BoundResult) -> str:
    return ";".join(
        f"{name}={'ok' if satisfied else 'violated'}"
        for name, satisfied in result.preconditions
    )


def _emit_bound_rows(results: Sequence[BoundResult], out: str, stream) -> None:
    if out == "csv":
        print("method,value,valid,preconditions,notes", file=stream)
        for r in results:
            print(
                f"{r.method.value},{r.value:.6g},{str(r.valid).lower()},"
                f"\"{_preconditions_cell(r)}\",\"{r.notes}\"",
                file=stream,
            )
    else:
        print(f"{'method':<20}{'value':>12}  {'valid':<6}notes", file=stream)
        for r in results:
            print(
                f"{r.method.value:<20}{r.value:>12.3f}  "
                f"{'yes' if r.valid else 'no':<6}{r.notes}",
                file=stream,
            )


def cmd_bounds(args) -> int:
    spec = load_spec(args.spec)
    quad = _quad_from_args(args)
    alphas = (
        _parse_float_list(args.alphas, "--alphas")
        if args.alphas
        else bound_ops.DEFAULT_ALPHAS
    )
    results = bound_ops.compute_bounds(spec, quad=quad, alphas=alphas, h=args.h)
    _emit_bound_rows(results, args.out, sys.stdout)
    best = best_bound(results)
    if args.out != "csv":
        print(f"best: {best.method.value} ({best.value:.3f})")
    return 0


_EXAMPLES = {"exp": half_annulus_spec, "sin": slit_ellipse_spec}


def cmd_table(args) -> int:
    factory = _EXAMPLES[args.example]
    d_values = _parse_float_list(args.d, "--d")
    columns = []
    for d in d_values:
        spec = factory(d)
        makai = bound_ops.bound_inradius(spec.inradius).value
        rfk = bound_ops.bound_faber_krahn(spec.area).value
        estimate = bound_ops.bound_sup_norm(
            exact_lambda1(spec.base), norm_sup(spec.map, spec.base)
        ).value
        columns.append((makai, rfk, estimate))

    rows = [
        ("Makai", [c[0] for c in columns]),
        ("RFK", [c[1] for c in columns]),
        ("Estimate", [c[2] for c in columns]),
    ]
    if args.out == "csv":
        print("bound," + ",".join(f"d={d:g}" for d in d_values))
        for name, values in rows:
            print(name + "," + ",".join(f"{v:.6g}" for v in values))
    else:
        print(f"{'d':<10}" + "".join(f"{d:>10.4f}" for d in d_values))
        for name, values in rows:
            print(f"{name:<10}" + "".join(f"{v:>10.3f}" for v in values))
    return 0


def _emit_validation(report: ValidationReport, out: str) -> None:
    if out == "csv":
        print("method,value,reference,tightness,passed")
        for row in report.rows:
            print(
                f"{row.method},{row.bound_value:.6g},{row.reference:.6g},"
                f"{row.tightness:.6g},{str(row.passed).lower()}"
            )
    else:
        print(
            f"lambda1 fd: h={report.h:g} -> {report.lambda1_coarse:.6f}, "
            f"h/2 -> {report.lambda1_fine:.6f}, "
            f"extrapolated {report.lambda1_extrapolated:.6f} "
            f"(band {report.rel_band:.2%})"
        )
        if report.gap_extrapolated is not None:
            print(f"gap extrapolated: {report.gap_extrapolated:.6f}")
        print(f"{'method':<20}{'bound':>12}{'reference':>12}{'ratio':>9}  result")
        for row in report.rows:
            print(
                f"{row.method:<20}{row.bound_value:>12.3f}"
                f"{row.reference:>12.3f}{row.tightness:>9.3f}  "
                f"{'pass' if row.passed else 'FAIL'}"
            )


def cmd_oracle(args) -> int:
    spec = load_spec(args.spec)
    quad = _quad_from_args(args)
    results = bound_ops.compute_bounds(spec, quad=quad, h=args.raster_h)
    report = validate(spec, results, h=args.h, tol=args.tol)
    _emit_validation(report, args.out)
    return 0 if report.all_passed else 3


def cmd_gap(args) -> int:
    spec = load_spec(args.spec)
    quad = _quad_from_args(args)
    results = bound_ops.compute_gap_bounds(spec, quad=quad, h=args.h)
    _emit_bound_rows(results, args.out, sys.stdout)
    if args.out != "csv":
        for r in results:
            inter = r.intermediates
            print(
                f"{r.method.value}: sup={inter['sup_norm']:.6f} "
                f"dev={inter['l2_dev']:.6f} rho={inter['rho']:.6f} "
                f"penalty={inter['penalty']:.6f}"
            )
    return 0


def cmd_check_regularity(args) -> int:
    spec = load_spec(args.spec)
    quad = _quad_from_args(args)
    alphas = _parse_float_list(args.alphas, "--alphas")
    entries = regularity_profile(spec.map, spec.base, alphas, quad)
    print(f"{'alpha':>8}  {'finite':<8}{'norm':>14}")
    for entry in entries:
        value = f"{entry.value:.6f}" if entry.value is not None else "-"
        print(f"{entry.alpha:>8g}  {'yes' if entry.finite else 'no':<8}{value:>14}")
    verdict = "conformal regular" if is_conformal_regular(entries) else "not established"
    print(f"verdict: {verdict}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confeig",
        description="Eigenvalue lower bounds for conformal image domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_quad_flags(p):
        p.add_argument("--quad-nodes", type=int, default=None,
                       help="Gauss-Legendre nodes per axis and panel")
        p.add_argument("--quad-panels", type=int, default=None,
                       help="quadrature panels per axis")

    p_bounds = sub.add_parser("bounds", help="evaluate the bound catalogue")
    p_bounds.add_argument("--spec", required=True, help="path to a spec JSON file")
    p_bounds.add_argument("--alphas", default=None,
                          help="comma-separated exponents for the alpha sweep")
    p_bounds.add_argument("--h", type=float, default=0.01,
                          help="raster pitch for a computed inradius")
    p_bounds.add_argument("--out", choices=("text", "csv"), default="text")
    add_quad_flags(p_bounds)
    p_bounds.set_defaults(handler=cmd_bounds)

    p_table = sub.add_parser("table", help="bound table for an example family")
    p_table.add_argument("--example", choices=sorted(_EXAMPLES), required=True)
    p_table.add_argument("--d", required=True,
                         help="comma-separated family parameters")
    p_table.add_argument("--out", choices=("text", "csv"), default="text")
    p_table.set_defaults(handler=cmd_table)

    p_oracle = sub.add_parser("oracle", help="validate bounds against FD eigenvalues")
    p_oracle.add_argument("--spec", required=True)
    p_oracle.add_argument("--h", type=float, required=True,
                          help="coarse FD pitch (the fine grid uses h/2)")
    p_oracle.add_argument("--k", type=int, default=1,
                          help="number of eigenvalues (informational)")
    p_oracle.add_argument("--tol", type=float, default=1e-6,
                          help="relative residual tolerance for the solver")
    p_oracle.add_argument("--raster-h", type=float, default=0.01,
                          help="raster pitch for a computed inradius")
    p_oracle.add_argument("--out", choices=("text", "csv"), default="text")
    add_quad_flags(p_oracle)
    p_oracle.set_defaults(handler=cmd_oracle)

    p_gap = sub.add_parser("gap", help="spectral-gap estimates")
    p_gap.add_argument("--spec", required=True)
    p_gap.add_argument("--h", type=float, default=0.01,
                       help="raster pitch for a computed inradius")
    p_gap.add_argument("--out", choices=("text", "csv"), default="text")
    add_quad_flags(p_gap)
    p_gap.set_defaults(handler=cmd_gap)

    p_reg = sub.add_parser("check-regularity", help="probe alpha-norm finiteness")
    p_reg.add_argument("--spec", required=True)
    p_reg.add_argument("--alphas", required=True,
                       help="comma-separated exponents, each > 2")
    add_quad_flags(p_reg)
    p_reg.set_defaults(handler=cmd_check_regularity)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the contract
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except SpecFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except NoValidBound as exc:
        print(f"no valid bound: {exc}", file=sys.stderr)
        return 4
    except ConfeigError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 3


def app() -> None:
    raise SystemExit(main())
