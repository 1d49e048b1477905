"""Zero conditions ``Z_k`` (sum rules of order ``k``) for masks with dilation ``2I``.

A symbol satisfies ``Z_k`` if ``a(1) = 2^d`` and every partial derivative
of order ``< k`` vanishes at the zero set ``{-1, 1}^d \\ {1}``.  The
literature also calls these conditions the sum rules of order ``k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .laurent import MAX_DIM, Exponent, LaurentPoly, hypercube
from .mask import Mask, submask


def zero_set(d: int) -> list[Exponent]:
    """Points of ``{-1, 1}^d`` except ``(1, ..., 1)``, lexicographically ordered."""
    if not isinstance(d, int) or not 1 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [1, {MAX_DIM}], got {d!r}")
    return [p for p in itertools.product((-1, 1), repeat=d) if any(x == -1 for x in p)]


def multi_indices(d: int, order: int) -> Iterator[Exponent]:
    """All ``j`` in ``N_0^d`` with ``|j| == order``, lexicographically."""
    for j in itertools.product(range(order + 1), repeat=d):
        if sum(j) == order:
            yield j


@dataclass(frozen=True)
class ZkWitness:
    point: Exponent
    orders: Exponent
    value: Fraction

    def __str__(self) -> str:
        return f"D^{self.orders} a at {self.point} = {self.value}"


@dataclass(frozen=True)
class ZkResult:
    """Outcome of a ``Z_k`` check; ``witness`` is None when the condition holds."""

    k: int
    witness: Optional[ZkWitness] = None

    @property
    def holds(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.holds


def _symbol(a) -> LaurentPoly:
    return a.symbol if isinstance(a, Mask) else a


def _normalization_witness(p: LaurentPoly) -> Optional[ZkWitness]:
    one = (1,) * p.dim
    v = p.evaluate(one)
    if v != 2 ** p.dim:
        return ZkWitness(one, (0,) * p.dim, v)
    return None


def _first_failure(p: LaurentPoly, order: int, points: list[Exponent]) -> Optional[ZkWitness]:
    for eps in points:
        for j in multi_indices(p.dim, order):
            v = p.derivative_at(j, eps)
            if v:
                return ZkWitness(eps, j, v)
    return None


def check_Zk(a: Mask | LaurentPoly, k: int) -> ZkResult:
    """Exact check of ``Z_k``.

    The reported witness is the first failure in the order: normalization
    ``a(1) = 2^d``, then derivative order ``|j|`` ascending, then zero-set
    point and multi-index lexicographically.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    p = _symbol(a)
    w = _normalization_witness(p)
    if w is not None:
        return ZkResult(k, w)
    points = zero_set(p.dim)
    for order in range(k):
        w = _first_failure(p, order, points)
        if w is not None:
            return ZkResult(k, w)
    return ZkResult(k)


def default_cap(p: LaurentPoly) -> int:
    return p.normalize_support()[0].total_degree() + 1 if p else 1


def sumrule_order(a: Mask | LaurentPoly, cap: Optional[int] = None) -> int:
    """Largest ``k <= cap`` for which ``Z_k`` holds; 0 if ``Z_1`` fails.

    ``cap`` defaults to the total degree of the support-normalized symbol
    plus one.
    """
    p = _symbol(a)
    if p.is_zero() or _normalization_witness(p) is not None:
        return 0
    if cap is None:
        cap = default_cap(p)
    points = zero_set(p.dim)
    k = 0
    while k < cap:
        if _first_failure(p, k, points) is not None:
            break
        k += 1
    return k


def sum_rule_form_holds(a: Mask | LaurentPoly) -> bool:
    """Order-one sum rules in coset form: every submask sums to one."""
    p = _symbol(a)
    return all(submask(p, e).evaluate((1,) * p.dim) == 1 for e in hypercube(p.dim))
