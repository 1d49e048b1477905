"""Difference schemes, operator norms, convergence certificates and refinement.

Data are row vectors and the subdivision step is ``d(z) -> d(z^2) B(z)``.
For a scalar mask ``a`` satisfying ``Z_1`` the difference scheme ``B``
solves ``a(z) (1 - z_j) = sum_i (1 - z_i^2) B_ij(z)``; if ``S_B^r`` has
infinity norm below one, ``S_a`` converges uniformly.  The test is one-sided:
failure to certify says nothing about divergence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .laurent import Exponent, LaurentPoly, divide, grlex_key
from .mask import Mask

logger = logging.getLogger(__name__)


class DifferenceSchemeError(ValueError):
    """``a(z)(1 - z_j)`` is not in the ideal generated by the ``1 - z_i^2``."""

    def __init__(self, column: int, remainder: LaurentPoly):
        super().__init__(f"nonzero remainder in column {column + 1}: {remainder}")
        self.column = column
        self.remainder = remainder


@dataclass(frozen=True)
class MatrixLaurent:
    """Square matrix of Laurent polynomials sharing one dimension."""

    entries: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square and nonempty")
        dims = {p.dim for row in self.entries for p in row}
        if len(dims) != 1:
            raise ValueError("all entries must share the same dimension")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]]) -> "MatrixLaurent":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def dim(self) -> int:
        return self.entries[0][0].dim

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "MatrixLaurent") -> "MatrixLaurent":
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = LaurentPoly.zero(self.dim)
                for l in range(n):
                    if self.entries[i][l] and other.entries[l][j]:
                        acc = acc + self.entries[i][l] * other.entries[l][j]
                row.append(acc)
            rows.append(tuple(row))
        return MatrixLaurent(tuple(rows))

    def substitute_power(self, m: int) -> "MatrixLaurent":
        return MatrixLaurent(tuple(tuple(p.substitute_power(m) for p in row) for row in self.entries))

    def __str__(self) -> str:
        return "\n".join(
            f"B[{i + 1},{j + 1}] = {p}" for i, row in enumerate(self.entries) for j, p in enumerate(row)
        )


def difference_scheme(a: Mask | LaurentPoly) -> MatrixLaurent:
    """Difference-scheme symbol by multivariate division.

    Column ``j`` comes from dividing ``a(z)(1 - z_j)`` by
    ``1 - z_1^2, ..., 1 - z_d^2`` (in that order) under graded
    lexicographic order.  Raises :class:`DifferenceSchemeError` on a
    nonzero remainder, which happens exactly when ``Z_1`` is violated
    (up to normalization of ``a(1)``).
    """
    p = a.symbol if isinstance(a, Mask) else a
    d = p.dim
    if d >= 3:
        logger.warning("difference schemes for d >= 3 are experimental")
    one = LaurentPoly.constant(1, d)
    zs = [LaurentPoly.variable(i, d) for i in range(d)]
    divisors = [one - z * z for z in zs]
    cols = []
    for j in range(d):
        prod = p * (one - zs[j])
        if prod.is_zero():
            cols.append([LaurentPoly.zero(d)] * d)
            continue
        shifted, m = prod.normalize_support()
        quotients, rem = divide(shifted, divisors)
        if not rem.is_zero():
            raise DifferenceSchemeError(j, rem.shift(m))
        cols.append([q.shift(m) for q in quotients])
    return MatrixLaurent(tuple(tuple(cols[j][i] for j in range(d)) for i in range(d)))


def check_difference_identity(a: Mask | LaurentPoly, B: MatrixLaurent) -> bool:
    """Exact check of ``a(z)(1 - z_j) == sum_i (1 - z_i^2) B_ij(z)`` for all ``j``."""
    p = a.symbol if isinstance(a, Mask) else a
    d = p.dim
    if B.size != d or B.dim != d:
        return False
    one = LaurentPoly.constant(1, d)
    zs = [LaurentPoly.variable(i, d) for i in range(d)]
    for j in range(d):
        rhs = LaurentPoly.zero(d)
        for i in range(d):
            rhs = rhs + (one - zs[i] * zs[i]) * B[i, j]
        if p * (one - zs[j]) != rhs:
            return False
    return True


def iterated_symbol(B: MatrixLaurent, r: int) -> MatrixLaurent:
    """``B(z^(2^(r-1))) ... B(z^2) B(z)``, the symbol of ``S_B^r``."""
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    out = B
    for s in range(1, r):
        out = B.substitute_power(2 ** s) @ out
    return out


def _norm_of_symbol(P: MatrixLaurent, r: int) -> Fraction:
    modulus = 2 ** r
    sums: dict[tuple, Fraction] = {}
    for i in range(P.size):
        for j in range(P.size):
            for e, c in P[i, j].terms.items():
                key = (tuple(x % modulus for x in e), j)
                sums[key] = sums.get(key, 0) + abs(c)
    return max(sums.values(), default=Fraction(0))


def operator_norm_inf(B: MatrixLaurent, r: int) -> Fraction:
    """Exact ``l_inf -> l_inf`` norm of ``S_B^r``.

    Maximum over residues ``e`` modulo ``2^r`` and output components ``j``
    of ``sum_beta sum_i |B^[r]_{e + 2^r beta}[i, j]|``.
    """
    return _norm_of_symbol(iterated_symbol(B, r), r)


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Result of the contraction test.

    ``certified`` means ``norms[r-1] < 1`` for the reported ``r``: a proof
    of uniform convergence.  Otherwise the test was inconclusive up to
    ``r_max``.
    """

    mask: Mask
    difference_symbol: MatrixLaurent
    norms: tuple[Fraction, ...]
    certified: bool

    @property
    def r(self) -> int:
        return len(self.norms)

    @property
    def norm(self) -> Fraction:
        return self.norms[-1]

    @property
    def best_norm(self) -> Fraction:
        return min(self.norms)

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "inconclusive"


def certify_convergence(a: Mask | LaurentPoly, r_max: int = 8) -> ConvergenceCertificate:
    """Scan ``r = 1..r_max`` for the first ``r`` with ``||S_B^r||_inf < 1``."""
    mask = a if isinstance(a, Mask) else Mask(a)
    if mask.dim > 2:
        raise ValueError("certification is supported for d <= 2")
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    B = difference_scheme(mask)
    norms = []
    P = B
    for r in range(1, r_max + 1):
        if r > 1:
            P = B.substitute_power(2 ** (r - 1)) @ P
        nrm = _norm_of_symbol(P, r)
        norms.append(nrm)
        logger.debug("r=%d norm=%s", r, nrm)
        if nrm < 1:
            return ConvergenceCertificate(mask, B, tuple(norms), True)
    return ConvergenceCertificate(mask, B, tuple(norms), False)


# ---------------------------------------------------------------------------
# refinement


@dataclass(frozen=True)
class DataGrid:
    """Values attached to the nodes ``2^-level * alpha``."""

    dim: int
    level: int = 0
    values: Mapping[Exponent, Fraction] = field(default_factory=dict)

    @classmethod
    def delta(cls, dim: int) -> "DataGrid":
        return cls(dim, 0, {(0,) * dim: Fraction(1)})

    @classmethod
    def from_poly(cls, p: LaurentPoly, level: int = 0) -> "DataGrid":
        return cls(p.dim, level, p.terms)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(dict(self.values), self.dim)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(((e, v) for e, v in self.values.items() if v), key=lambda t: t[0])


def subdivide(a: Mask | LaurentPoly, d0: DataGrid, steps: int) -> DataGrid:
    """Apply ``(S_a d)_alpha = sum_beta d_beta a_{alpha - 2 beta}`` ``steps`` times."""
    p = a.symbol if isinstance(a, Mask) else a
    if p.dim != d0.dim:
        raise ValueError(f"mask dimension {p.dim} differs from data dimension {d0.dim}")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    mask_terms = list(p.terms.items())
    values = {e: Fraction(v) for e, v in d0.values.items() if v}
    for _ in range(steps):
        out: dict[Exponent, Fraction] = {}
        for beta, dv in values.items():
            base = tuple(2 * b for b in beta)
            for gamma, av in mask_terms:
                alpha = tuple(x + y for x, y in zip(base, gamma))
                out[alpha] = out.get(alpha, 0) + dv * av
        values = {e: v for e, v in out.items() if v}
    return DataGrid(d0.dim, d0.level + steps, values)


def refinement_symbol(a: Mask | LaurentPoly, r: int) -> LaurentPoly:
    """``a(z) a(z^2) ... a(z^(2^(r-1)))``: the symbol of ``S_a^r`` applied to a delta."""
    p = a.symbol if isinstance(a, Mask) else a
    out = LaurentPoly.constant(1, p.dim)
    for s in range(r):
        out = out * p.substitute_power(2 ** s)
    return out


def sorted_items(p: LaurentPoly) -> list[tuple[Exponent, Fraction]]:
    return sorted(p.terms.items(), key=lambda t: grlex_key(t[0]))
