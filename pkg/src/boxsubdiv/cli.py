"""Command-line front end: ``boxsubdiv <command> ...``.

Exit status: 0 on success, 1 when ``verify-paper`` finds a failing item,
2 on invalid input, 3 when the decomposition search gives up.
"""

from __future__ import annotations

import argparse
import decimal
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .boxspline import MODIFIED, STANDARD, direction_matrix, generator_set, unimodular_submatrices
from .catalog import UnknownScheme, get_scheme, list_schemes
from .convergence import DataGrid, DifferenceSchemeError, certify_convergence, subdivide
from .decompose import PreconditionError, SolverIncomplete, decompose, normalize_affine, verify_decomposition, weight_sum
from .laurent import LaurentPoly
from .mask import Mask, MaskFormatError, dump_json, mask_to_dict, poly_from_dict
from .sumrules import check_Zk, sumrule_order

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_INCOMPLETE = 3


class UsageError(Exception):
    pass


def decimal_string(x: Fraction, places: int = 12) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = max(50, len(str(abs(x.numerator))) + places + 5)
        q = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
        return str(q.quantize(decimal.Decimal(1).scaleb(-places), rounding=decimal.ROUND_HALF_EVEN))


def number(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x} ({decimal_string(x)})"


def number_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"exact": str(x), "decimal": decimal_string(x)}


def load_mask(source: str) -> tuple[Mask, str]:
    """Catalog names win over file paths."""
    try:
        return get_scheme(source).mask, f"catalog:{source}"
    except UnknownScheme as exc:
        if not Path(source).exists():
            raise UsageError(f"{source!r} is neither a catalog scheme nor a readable file ({exc})") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return Mask.load(source), source


def _load_grid(source: str, dim: int) -> DataGrid:
    if source == "delta":
        return DataGrid.delta(dim)
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise MaskFormatError(f"invalid JSON in {source}: {exc}") from None
    return DataGrid.from_poly(poly_from_dict(data))


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(dump_json({"command": args.command, "status": "ok", "result": payload}))
    else:
        print("\n".join(text_lines))


def _poly_text(p: LaurentPoly) -> str:
    return str(p)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    mask, src = load_mask(args.mask)
    p = mask.symbol
    v1 = mask.value_at_one()
    order = sumrule_order(mask)
    interp = mask.is_interpolatory()
    z1 = check_Zk(mask, 1)
    lines = [
        f"mask: {src}",
        f"dim: {mask.dim}",
        f"terms: {len(p)}",
        f"a(1): {number(v1)}",
        f"interpolatory: {'yes' if interp else 'no'}",
        f"sum-rule order: {order}",
    ]
    if not z1.holds:
        lines.append(f"Z_1 witness: {z1.witness}")
    _emit(
        args,
        lines,
        {
            "source": src,
            "dim": mask.dim,
            "value_at_one": number_json(v1),
            "interpolatory": interp,
            "sumrule_order": order,
            "mask": mask.to_dict(),
        },
    )
    return EXIT_OK


def cmd_decompose(args) -> int:
    mask, src = load_mask(args.mask)
    variant = MODIFIED if args.modified else STANDARD
    if variant == MODIFIED and mask.dim < 2:
        raise UsageError("the modified variant needs d >= 2")
    dec = normalize_affine(decompose(mask, args.order, support_slack=args.slack, variant=variant))
    ver = verify_decomposition(mask, dec)
    gens = generator_set(mask.dim, args.order, variant)
    if mask.dim == 2:
        route = "three-directional box splines I_k"
    elif args.order == 1:
        route = "unimodular q_Theta generators"
    else:
        route = "products of unimodular q_Theta generators"
    lines = [
        f"mask: {src}",
        f"order: {args.order}",
        f"generators: {route} ({variant}, {len(gens)} members)",
        f"support slack: {dec.slack}",
        f"verified: {'yes' if ver.valid else 'no'}",
        f"fully normalized: {'yes' if dec.fully_normalized else 'no (terms with c(1) = 0 kept raw)'}",
        f"sum of weights: {number(weight_sum(dec))}",
        "terms:",
    ]
    terms_json = []
    for t in dec.normalized:
        if t.raw:
            lines.append(f"  {t.label}: raw cofactor {_poly_text(t.sigma)}")
        else:
            lines.append(f"  {t.label}: weight {number(t.weight)}; sigma {_poly_text(t.sigma)}")
        terms_json.append(
            {
                "generator": str(t.label),
                "weight": None if t.raw else number_json(t.weight),
                "sigma" if not t.raw else "cofactor": mask_to_dict(t.sigma),
            }
        )
    _emit(
        args,
        lines,
        {
            "source": src,
            "order": args.order,
            "variant": variant,
            "slack": dec.slack,
            "verified": ver.valid,
            "fully_normalized": dec.fully_normalized,
            "weight_sum": number_json(weight_sum(dec)),
            "terms": terms_json,
        },
    )
    return EXIT_OK if ver.valid else EXIT_FAILED


def cmd_certify(args) -> int:
    mask, src = load_mask(args.mask)
    cert = certify_convergence(mask, args.max_iter)
    lines = [f"mask: {src}", f"verdict: {cert.verdict}"]
    if cert.certified:
        lines += [f"r: {cert.r}", f"norm: {number(cert.norm)}"]
    else:
        lines += [f"r_max: {cert.r}", f"best norm: {number(cert.best_norm)}"]
    lines.append("norms:")
    lines += [f"  r={r}: {number(n)}" for r, n in enumerate(cert.norms, start=1)]
    lines.append("difference symbol:")
    lines += ["  " + s for s in str(cert.difference_symbol).splitlines()]
    _emit(
        args,
        lines,
        {
            "source": src,
            "verdict": cert.verdict,
            "r": cert.r,
            "norms": [number_json(n) for n in cert.norms],
            "difference_symbol": [
                [mask_to_dict(cert.difference_symbol[i, j]) for j in range(cert.difference_symbol.size)]
                for i in range(cert.difference_symbol.size)
            ],
        },
    )
    return EXIT_OK


def cmd_refine(args) -> int:
    mask, src = load_mask(args.mask)
    grid = _load_grid(args.data, mask.dim)
    if grid.dim != mask.dim:
        raise UsageError(f"data dimension {grid.dim} differs from mask dimension {mask.dim}")
    out = subdivide(mask, grid, args.steps)
    header = "\t".join([f"i{j + 1}" for j in range(out.dim)] + ["value", "decimal"])
    lines = [f"mask: {src}", f"level: {out.level}", f"nodes: {len(out.items())}", header]
    for idx, v in out.items():
        lines.append("\t".join([str(i) for i in idx] + [str(v), decimal_string(v)]))
    payload = {"source": src, "level": out.level}
    payload.update(mask_to_dict(out.to_poly()))
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_generators(args) -> int:
    variant = MODIFIED if args.modified else STANDARD
    gens = generator_set(args.dim, args.order, variant)
    lines = [f"dim: {args.dim}", f"order: {args.order}", f"variant: {variant}", f"count: {len(gens)}"]
    dets = {}
    if args.order == 1 and args.dim != 2:
        dets = {s.columns: s.det for s in unimodular_submatrices(direction_matrix(args.dim, "first_two"))}
    rows = []
    for i, (label, sym) in enumerate(gens, start=1):
        det = dets.get(label.data)
        extra = f"\tdet {det}\t{'odd' if det % 2 else 'even'}" if det is not None else ""
        lines.append(f"{i}\t{label}{extra}\t{sym}")
        rows.append({"label": str(label), "det": det, "symbol": mask_to_dict(sym)})
    _emit(args, lines, {"dim": args.dim, "order": args.order, "variant": variant, "generators": rows})
    return EXIT_OK


def _table_text(mask: Mask) -> list[str]:
    rows, den, lo = mask.to_table()
    width = max(len(str(v)) for row in rows for v in row)
    out = [f"denominator {den}; bottom-left index {lo}"]
    out += ["  " + " ".join(str(v).rjust(width) for v in row) for row in rows]
    return out


def cmd_catalog(args) -> int:
    if args.action == "list":
        items = list_schemes()
        lines = [f"{n}\t{desc}" for n, desc in items]
        lines.append("families: box3-A-B-C, box4-A-B-C-D, bspline-K")
        _emit(args, lines, {"schemes": [{"name": n, "description": d} for n, d in items]})
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog show needs a scheme name")
    try:
        entry = get_scheme(args.name)
    except UnknownScheme as exc:
        raise UsageError(str(exc)) from None
    lines = [f"name: {entry.name}", f"description: {entry.description}", f"provenance: {entry.provenance}"]
    if entry.known_order is not None:
        lines.append(f"known sum-rule order: {entry.known_order}")
    if entry.mask.dim <= 2:
        lines += ["table:"] + _table_text(entry.mask)
    lines += ["interchange:", entry.mask.to_json()]
    _emit(
        args,
        lines,
        {"name": entry.name, "description": entry.description, "provenance": entry.provenance, "mask": entry.mask.to_dict()},
    )
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .checks import run_all

    results = run_all(args.only)
    ok = all(r.passed for r in results)
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.number}: {r.title} ({r.seconds:.2f}s)")
        for c in r.checks:
            if args.verbose or not c.passed:
                tail = f" -- {c.detail}" if c.detail else ""
                lines.append(f"    {'ok  ' if c.passed else 'FAIL'} {c.name}{tail}")
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    _emit(
        args,
        lines,
        {
            "passed": ok,
            "criteria": [
                {
                    "number": r.number,
                    "title": r.title,
                    "passed": r.passed,
                    "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.checks],
                }
                for r in results
            ],
        },
    )
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boxsubdiv", description="Exact analysis of subdivision masks with dilation 2I.")
    parser.add_argument("-v", "--log-level", default="WARNING", help="logging level (default WARNING)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="dimension, a(1), interpolation, sum-rule order")
    p.add_argument("mask", help="catalog name or mask file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", parents=[common], help="express the symbol over generators of the k-th power")
    p.add_argument("mask")
    p.add_argument("--order", "-k", type=_positive, required=True)
    p.add_argument("--modified", action="store_true", help="use the (z_j + z_k)/2 generators")
    p.add_argument("--slack", type=_nonnegative, default=None, help="fixed cofactor support slack")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("certify", parents=[common], help="difference-scheme contraction test")
    p.add_argument("mask")
    p.add_argument("--max-iter", type=_positive, default=8)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("refine", parents=[common], help="run the refinement recursion")
    p.add_argument("mask")
    p.add_argument("--steps", type=_nonnegative, required=True)
    p.add_argument("--data", default="delta", help="'delta' or a file in the mask interchange format")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("generators", parents=[common], help="list generators of the k-th power")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--order", "-k", type=_positive, required=True)
    p.add_argument("--modified", action="store_true")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("catalog", parents=[common], help="built-in masks")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reference identity suite")
    p.add_argument("--only", type=_positive, nargs="+", help="criterion numbers to run")
    p.add_argument("--verbose", action="store_true", help="list passing items too")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING))
    try:
        return args.func(args)
    except SolverIncomplete as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (UsageError, MaskFormatError, PreconditionError, DifferenceSchemeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
