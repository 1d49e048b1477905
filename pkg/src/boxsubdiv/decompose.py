"""Decomposition of mask symbols over generators of powers of the ideal.

Given a symbol ``a`` satisfying ``Z_k`` and generators ``g_t`` of the
``k``-th power, :func:`decompose` finds Laurent cofactors ``c_t`` with

    a(z) = sum_t c_t(z) * 2^d * g_t(z)

by an exact linear solve over a bounded cofactor support.
:func:`normalize_affine` then rewrites each term as ``lambda_t * sigma_t``
with ``sigma_t(1) = 1``; the weights sum to one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .boxspline import STANDARD, GeneratorLabel, GeneratorSet, generator_set
from .laurent import Exponent, LaurentPoly, grlex_key
from .linsolve import InconsistentSystem, solve_sparse
from .mask import Mask
from .sumrules import ZkWitness, check_Zk

SLACK_SCHEDULE = (0, 2, 4, 8, 16)


class PreconditionError(ValueError):
    """The symbol does not satisfy the zero condition of the requested order."""

    def __init__(self, k: int, witness: ZkWitness):
        super().__init__(f"condition Z_{k} fails: {witness}")
        self.k = k
        self.witness = witness


class SolverIncomplete(RuntimeError):
    """``Z_k`` holds but no cofactors were found inside the largest support box.

    This is a limitation of the bounded search, not evidence of
    non-membership.
    """

    def __init__(self, k: int, max_slack: int):
        super().__init__(
            f"Z_{k} holds but no decomposition was found with support slack <= {max_slack}"
        )
        self.k = k
        self.max_slack = max_slack


@dataclass(frozen=True)
class Term:
    label: GeneratorLabel
    generator: LaurentPoly
    cofactor: LaurentPoly


@dataclass(frozen=True)
class NormalizedTerm:
    """``weight * sigma`` with ``sigma(1) = 1``, or the raw cofactor when ``weight`` is None."""

    label: GeneratorLabel
    weight: Optional[Fraction]
    sigma: LaurentPoly

    @property
    def raw(self) -> bool:
        return self.weight is None


@dataclass(frozen=True)
class Decomposition:
    target: Mask
    order: int
    terms: tuple[Term, ...]
    slack: Optional[int] = None
    normalized: Optional[tuple[NormalizedTerm, ...]] = field(default=None)

    @property
    def dim(self) -> int:
        return self.target.dim

    def assemble(self) -> LaurentPoly:
        scale = 2 ** self.dim
        out = LaurentPoly.zero(self.dim)
        for t in self.terms:
            out = out + t.cofactor * t.generator * scale
        return out

    @property
    def fully_normalized(self) -> bool:
        return self.normalized is not None and not any(t.raw for t in self.normalized)

    def weights(self) -> list[Optional[Fraction]]:
        if self.normalized is None:
            raise ValueError("call normalize_affine first")
        return [t.weight for t in self.normalized]


@dataclass(frozen=True)
class Verification:
    residual: LaurentPoly

    @property
    def valid(self) -> bool:
        return self.residual.is_zero()

    def __bool__(self) -> bool:
        return self.valid


def from_combination(
    target: Mask | LaurentPoly,
    order: int,
    combination: Sequence[tuple[GeneratorLabel, LaurentPoly, LaurentPoly]],
) -> Decomposition:
    """Wrap a hand-written combination ``(label, generator, cofactor)``."""
    mask = target if isinstance(target, Mask) else Mask(target)
    return Decomposition(mask, order, tuple(Term(lab, g, c) for lab, g, c in combination))


def _cofactor_box(p: LaurentPoly, slack: int) -> list[Exponent]:
    lo, hi = p.min_exponent(), p.max_exponent()
    ranges = [range(l - slack, h + slack + 1) for l, h in zip(lo, hi)]
    return sorted(itertools.product(*ranges), key=grlex_key)


def _solve(p: LaurentPoly, gens: GeneratorSet, slack: int) -> Optional[list[LaurentPoly]]:
    box = _cofactor_box(p, slack)
    scale = 2 ** p.dim
    unknowns: list[tuple[int, Exponent]] = []
    equations: dict[Exponent, dict[int, Fraction]] = {}
    for gi, g in enumerate(gens.symbols):
        gterms = list(g.terms.items())
        for e in box:
            col = len(unknowns)
            unknowns.append((gi, e))
            for ge, gc in gterms:
                m = tuple(x + y for x, y in zip(ge, e))
                equations.setdefault(m, {})[col] = gc * scale
    target = p.terms
    if any(m not in equations for m in target):
        return None
    monos = sorted(equations, key=grlex_key)
    try:
        x = solve_sparse([equations[m] for m in monos], [target.get(m, Fraction(0)) for m in monos], len(unknowns))
    except InconsistentSystem:
        return None
    cof: list[dict[Exponent, Fraction]] = [{} for _ in gens.symbols]
    for col, v in x.items():
        gi, e = unknowns[col]
        cof[gi][e] = v
    return [LaurentPoly(c, p.dim) for c in cof]


def decompose(
    a: Mask | LaurentPoly,
    k: int,
    gens: Optional[GeneratorSet] = None,
    support_slack: Optional[int] = None,
    variant: str = STANDARD,
) -> Decomposition:
    """Exact cofactors expressing ``a`` over the generators of the ``k``-th power.

    Unknowns are the cofactor coefficients on the bounding box of ``a``'s
    support widened by ``support_slack`` on every side, ordered by
    generator and then graded-lexicographically; the basic solution of the
    resulting system (free unknowns zero) is returned.  With
    ``support_slack=None`` the slacks ``0, 2, 4, 8, 16`` are tried in turn.

    Raises :class:`PreconditionError` if ``Z_k`` fails and
    :class:`SolverIncomplete` if no solution fits the largest box.
    """
    mask = a if isinstance(a, Mask) else Mask(a)
    p = mask.symbol
    if gens is None:
        gens = generator_set(p.dim, k, variant)
    if gens.order != k or gens.dim != p.dim:
        raise ValueError(f"generator set is for order {gens.order}, dim {gens.dim}")
    result = check_Zk(p, k)
    if not result.holds:
        raise PreconditionError(k, result.witness)
    schedule = SLACK_SCHEDULE if support_slack is None else (support_slack,)
    for slack in schedule:
        cofactors = _solve(p, gens, slack)
        if cofactors is not None:
            terms = tuple(Term(lab, g, c) for (lab, g), c in zip(gens.members, cofactors))
            return Decomposition(mask, k, terms, slack)
    raise SolverIncomplete(k, schedule[-1])


def verify_decomposition(a: Mask | LaurentPoly, dec: Decomposition) -> Verification:
    """Exact residual ``a - sum_t c_t * 2^d * g_t``."""
    p = a.symbol if isinstance(a, Mask) else a
    return Verification(p - dec.assemble())


def normalize_affine(dec: Decomposition) -> Decomposition:
    """Split cofactors into weight and normalized symbol.

    Terms with ``c_t(1) == 0`` cannot be normalized; they are kept raw
    (``weight=None``) and the result is then only partially normalized.
    Terms with a zero cofactor are dropped.
    """
    one = (1,) * dec.dim
    out = []
    for t in dec.terms:
        if t.cofactor.is_zero():
            continue
        w = t.cofactor.evaluate(one)
        if w:
            out.append(NormalizedTerm(t.label, w, t.cofactor / w))
        else:
            out.append(NormalizedTerm(t.label, None, t.cofactor))
    return replace(dec, normalized=tuple(out))


def weight_sum(dec: Decomposition) -> Fraction:
    return sum((t.weight for t in (dec.normalized or ()) if t.weight is not None), Fraction(0))
