"""Direction matrices, unimodular column selections and box-spline symbols.

Generators of the ideal of polynomials vanishing on ``{-1,1}^d \\ {1}``
(and of its powers) are built here:

* ``q_Theta = prod_theta (1 + z^theta) / 2`` for unimodular ``d x d``
  selections ``Theta`` of edge and face-diagonal directions, plus the
  "modified" variant whose diagonal factors are ``(z_j + z_k) / 2``;
* bivariate three- and four-directional symbols ``B#_{a,b,c[,d]}`` and the
  generator lists ``I_k`` of the ``k``-th power of the ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .laurent import MAX_DIM, Exponent, LaurentPoly, Scalar, as_fraction

STANDARD = "standard"
MODIFIED = "modified"
VARIANTS = (STANDARD, MODIFIED)


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    return variant


# ---------------------------------------------------------------------------
# direction matrices


@dataclass(frozen=True)
class DirectionMatrix:
    """Ordered 0/1 direction vectors in ``d`` dimensions (stored as columns)."""

    dim: int
    columns: tuple[Exponent, ...]

    def __len__(self) -> int:
        return len(self.columns)

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(col[i] for col in self.columns) for i in range(self.dim)]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows())


def direction_matrix(d: int, sections: str = "all") -> DirectionMatrix:
    """Nonzero vertices of the unit cube grouped by the number of ones.

    ``sections="all"`` returns every nonzero vertex of ``{0,1}^d``;
    ``sections="first_two"`` keeps the unit vectors and the sums
    ``e_j + e_k``.  Within one weight, vectors are ordered as
    ``e_1, e_2, ...`` and ``e_1+e_2, e_1+e_3, ..., e_2+e_3, ...``.
    """
    if not isinstance(d, int) or not 1 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [1, {MAX_DIM}], got {d!r}")
    if sections not in ("all", "first_two"):
        raise ValueError("sections must be 'all' or 'first_two'")
    max_weight = d if sections == "all" else min(2, d)
    cols = [v for v in itertools.product((1, 0), repeat=d) if 0 < sum(v) <= max_weight]
    cols.sort(key=sum)  # stable: keeps descending lexicographic order within a weight
    return DirectionMatrix(d, tuple(cols))


def determinant(columns: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    n = len(columns)
    m = [[int(columns[j][i]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class Submatrix:
    """A choice of ``d`` columns of a direction matrix (1-based ``indices``)."""

    indices: tuple[int, ...]
    columns: tuple[Exponent, ...]
    det: int

    @property
    def parity(self) -> str:
        return "odd" if self.det % 2 else "even"

    @property
    def unimodular(self) -> bool:
        return abs(self.det) == 1


def unimodular_submatrices(X: DirectionMatrix) -> list[Submatrix]:
    """All ``C(m, d)`` square column selections with determinant and parity.

    Selections are listed in lexicographic order of the chosen column
    indices.  Filter on :attr:`Submatrix.unimodular` for the generators.
    """
    d = X.dim
    if len(X) < d:
        raise ValueError("direction matrix has fewer than d columns")
    out = []
    for idx in itertools.combinations(range(len(X)), d):
        cols = tuple(X.columns[i] for i in idx)
        out.append(Submatrix(tuple(i + 1 for i in idx), cols, determinant(cols)))
    return out


# ---------------------------------------------------------------------------
# generator labels and symbols


@dataclass(frozen=True)
class GeneratorLabel:
    """Identifies a generator symbol.

    ``kind`` is one of ``q_theta``, ``q_tilde``, ``q_product``,
    ``q_tilde_product``, ``box3``, ``box3_tilde``, ``box4``.  ``data`` is
    the column tuple of ``Theta``, a tuple of such column tuples for
    products, or the box-spline multiplicities.
    """

    kind: str
    data: tuple

    def __str__(self) -> str:
        if self.kind in ("box3", "box4"):
            return "B#[" + ",".join(map(str, self.data)) + "]"
        if self.kind == "box3_tilde":
            return "B~#[" + ",".join(map(str, self.data)) + "]"
        name = "q" if self.kind.startswith("q_theta") or self.kind == "q_product" else "q~"
        if self.kind.endswith("product"):
            return "*".join(name + _theta_str(t) for t in self.data)
        return name + _theta_str(self.data)


def _theta_str(theta) -> str:
    return "[" + ",".join("".join(map(str, col)) for col in theta) + "]"


def _half_one_plus(exp: Sequence[int]) -> LaurentPoly:
    d = len(exp)
    return LaurentPoly({(0,) * d: Fraction(1, 2), tuple(exp): Fraction(1, 2)}, d)


def _tilde_factor(theta: Sequence[int]) -> LaurentPoly:
    d = len(theta)
    ones = [i for i, x in enumerate(theta) if x]
    if any(x not in (0, 1) for x in theta) or len(ones) not in (1, 2):
        raise ValueError(f"column {tuple(theta)} is neither e_k nor e_j + e_k")
    if len(ones) == 1:
        return _half_one_plus(theta)
    j, k = ones
    ej = tuple(int(i == j) for i in range(d))
    ek = tuple(int(i == k) for i in range(d))
    return LaurentPoly({ej: Fraction(1, 2), ek: Fraction(1, 2)}, d)


def generator_q(theta: Sequence[Sequence[int]], variant: str = STANDARD) -> LaurentPoly:
    """Normalized degree-zero box-spline symbol for the columns ``theta``."""
    _check_variant(variant)
    if not theta:
        raise ValueError("theta must have at least one column")
    d = len(theta[0])
    out = LaurentPoly.constant(1, d)
    for col in theta:
        if len(col) != d:
            raise ValueError("all columns must have the same length")
        if any(x not in (0, 1) for x in col) or not any(col):
            raise ValueError(f"column {tuple(col)} is not a nonzero vertex of the unit cube")
        out = out * (_half_one_plus(col) if variant == STANDARD else _tilde_factor(col))
    return out


def box_symbol(
    alpha: int,
    beta: int,
    gamma: int,
    delta: int = 0,
    variant: str = STANDARD,
    normalized: bool = True,
) -> LaurentPoly:
    """Bivariate three- or four-directional box-spline symbol.

    Standard: ``((1+z1)/2)^a ((1+z2)/2)^b ((1+z1 z2)/2)^c ((1+z1/z2)/2)^d``.
    Modified (``delta == 0`` only) uses ``((z1+z2)/2)^c`` as third factor.
    With ``normalized=False`` the result is the refinement mask symbol,
    i.e. multiplied by 4.
    """
    _check_variant(variant)
    if min(alpha, beta, gamma, delta) < 0:
        raise ValueError("box-spline multiplicities must be nonnegative")
    if delta and variant != STANDARD:
        raise ValueError("the fourth direction is only defined for the standard variant")
    h = Fraction(1, 2)
    f1 = LaurentPoly({(0, 0): h, (1, 0): h})
    f2 = LaurentPoly({(0, 0): h, (0, 1): h})
    f3 = LaurentPoly({(0, 0): h, (1, 1): h}) if variant == STANDARD else LaurentPoly({(1, 0): h, (0, 1): h})
    f4 = LaurentPoly({(0, 0): h, (1, -1): h})
    out = f1 ** alpha * f2 ** beta * f3 ** gamma * f4 ** delta
    return out if normalized else out * 4


def box_label(alpha: int, beta: int, gamma: int, delta: int = 0, variant: str = STANDARD) -> GeneratorLabel:
    if delta:
        return GeneratorLabel("box4", (alpha, beta, gamma, delta))
    return GeneratorLabel("box3" if variant == STANDARD else "box3_tilde", (alpha, beta, gamma))


# ---------------------------------------------------------------------------
# generator sets


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generators of the ``order``-th power of the ideal."""

    order: int
    dim: int
    variant: str
    members: tuple[tuple[GeneratorLabel, LaurentPoly], ...] = field(default=())

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def labels(self) -> list[GeneratorLabel]:
        return [lab for lab, _ in self.members]

    @property
    def symbols(self) -> list[LaurentPoly]:
        return [g for _, g in self.members]


def ik_indices(k: int) -> list[tuple[int, int, int]]:
    """Multiplicity triples of ``I_k``, deduplicated, in listing order."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"order k must be a positive integer, got {k!r}")
    out: list[tuple[int, int, int]] = []
    for a in range(k // 2 + 1):
        b = k - a
        for t in ((b, b, a), (b, a, b), (a, b, b)):
            if t not in out:
                out.append(t)
    return out


def generator_set_Ik(k: int, variant: str = STANDARD) -> GeneratorSet:
    """Three-directional generators of the ``k``-th power (bivariate)."""
    _check_variant(variant)
    members = tuple(
        (box_label(*t, variant=variant), box_symbol(*t, variant=variant)) for t in ik_indices(k)
    )
    return GeneratorSet(k, 2, variant, members)


def generator_set_q(d: int, variant: str = STANDARD) -> GeneratorSet:
    """Unimodular ``q_Theta`` (or modified) generators of the ideal itself."""
    _check_variant(variant)
    X = direction_matrix(d, "first_two")
    kind = "q_theta" if variant == STANDARD else "q_tilde"
    members = tuple(
        (GeneratorLabel(kind, s.columns), generator_q(s.columns, variant))
        for s in unimodular_submatrices(X)
        if s.unimodular
    )
    return GeneratorSet(1, d, variant, members)


def generator_set_products(d: int, k: int, variant: str = STANDARD) -> GeneratorSet:
    """All ``k``-fold products of unimodular ``q_Theta``, deduplicated by value."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"order k must be a positive integer, got {k!r}")
    base = generator_set_q(d, variant)
    kind = "q_product" if variant == STANDARD else "q_tilde_product"
    seen: set[LaurentPoly] = set()
    members = []
    for combo in itertools.combinations_with_replacement(range(len(base)), k):
        poly = LaurentPoly.constant(1, d)
        for i in combo:
            poly = poly * base.members[i][1]
        if poly in seen:
            continue
        seen.add(poly)
        members.append((GeneratorLabel(kind, tuple(base.members[i][0].data for i in combo)), poly))
    return GeneratorSet(k, d, variant, tuple(members))


def generator_set(d: int, k: int, variant: str = STANDARD) -> GeneratorSet:
    """Default generators for order ``k`` in dimension ``d``.

    ``d == 2`` uses the three-directional lists ``I_k``; ``k == 1`` uses
    the unimodular ``q_Theta``; otherwise ``k``-fold products of those.
    """
    if d == 2:
        return generator_set_Ik(k, variant)
    if k == 1:
        return generator_set_q(d, variant)
    return generator_set_products(d, k, variant)


# ---------------------------------------------------------------------------
# closed-form orders


def max_sumrule_order(alpha: int, beta: int, gamma: int, delta: int = 0) -> int:
    """Largest ``k`` with ``B#_{alpha,beta,gamma,delta}`` in the ``k``-th power."""
    return alpha + beta + gamma + delta - max(alpha, beta, gamma + delta)


def smoothness_kappa(alpha: int, beta: int, gamma: int, delta: int = 0) -> int:
    """Smoothness index: the box spline lies in ``L_inf^(kappa-1)``."""
    return alpha + beta + gamma + delta - max(alpha, beta, gamma, delta)


def kappa_exceeds_order(alpha: int, beta: int, gamma: int, delta: int = 0) -> bool:
    return gamma + delta > max(alpha, beta) and min(gamma, delta) > 0


def expand_4dir_to_3dir(alpha: int, beta: int, gamma: int, delta: int) -> list[tuple[Exponent, Fraction, tuple[int, int, int]]]:
    """Rewrite ``B#_{a,b,c,d}`` as shifted three-directional symbols.

    Returns ``(monomial exponent, coefficient, (a', b', c'))`` terms whose
    sum ``coeff * z^exp * B#_{a',b',c'}`` equals the four-directional symbol.
    Uses ``(z1 + z2)/2 = 2 B#_{1,1,0} - B#_{0,0,1}``.
    """
    if min(alpha, beta, gamma, delta) < 0:
        raise ValueError("box-spline multiplicities must be nonnegative")
    shift = (0, -delta)
    return [
        (shift, Fraction(2 ** ell * (-1) ** (delta - ell) * comb(delta, ell)),
         (alpha + ell, beta + ell, gamma + delta - ell))
        for ell in range(delta, -1, -1)
    ]


def assemble_expansion(terms: Sequence[tuple[Exponent, Scalar, tuple[int, int, int]]]) -> LaurentPoly:
    out = LaurentPoly.zero(2)
    for exp, coeff, idx in terms:
        out = out + box_symbol(*idx).shift(exp) * as_fraction(coeff)
    return out


# ---------------------------------------------------------------------------
# closed-form derivatives


def box_derivative_formula(
    alpha: int,
    beta: int,
    gamma: int,
    n: int,
    m: int,
    point: Sequence[Scalar],
    variant: str = STANDARD,
) -> Fraction:
    """``D^(n,m) B#_{alpha,beta,gamma}`` at ``point`` via the binomial double sum."""
    _check_variant(variant)
    z1, z2 = (as_fraction(v) for v in point)
    h = Fraction(1, 2)

    def pw(x: Fraction, e: int) -> Fraction:
        return x ** e if e >= 0 else Fraction(0)

    total = Fraction(0)
    for ell in range(gamma + 1):
        if variant == STANDARD:
            s1 = sum(
                Fraction(factorial(n), 2 ** n) * comb(alpha + ell, n - i) * pw((1 + z1) * h, alpha + ell - (n - i))
                * comb(gamma - ell, i) * pw((z1 - 1) * h, gamma - ell - i)
                for i in range(n + 1)
            )
            s2 = sum(
                Fraction(factorial(m), 2 ** m) * comb(beta + ell, m - j) * pw((1 + z2) * h, beta + ell - (m - j))
                * comb(gamma - ell, j) * pw((z2 - 1) * h, gamma - ell - j)
                for j in range(m + 1)
            )
        else:
            s1 = sum(
                Fraction(factorial(n), 2 ** n) * comb(alpha, n - i) * pw((1 + z1) * h, alpha - (n - i))
                * comb(ell, i) * pw(z1 * h, ell - i)
                for i in range(n + 1)
            )
            s2 = sum(
                Fraction(factorial(m), 2 ** m) * comb(beta, m - j) * pw((1 + z2) * h, beta - (m - j))
                * comb(gamma - ell, j) * pw(z2 * h, gamma - ell - j)
                for j in range(m + 1)
            )
        total += comb(gamma, ell) * s1 * s2
    return total


def directional_derivative_at(
    p: LaurentPoly, n: int, m: int, ell: int, point: Sequence[Scalar], sign: int = 1
) -> Fraction:
    """``d1^n d2^m (d1 + sign*d2)^ell p`` at ``point``, via mixed partials."""
    return sum(
        (comb(ell, j) * sign ** (ell - j) * p.derivative_at((n + j, m + ell - j), point) for j in range(ell + 1)),
        Fraction(0),
    )


@dataclass(frozen=True)
class Witness:
    """Derivative functional ``d1^n d2^m (d1 + sign*d2)^ell`` evaluated at a point."""

    n: int
    m: int
    ell: int
    point: tuple[int, int]
    sign: int = 1

    def __call__(self, p: LaurentPoly) -> Fraction:
        return directional_derivative_at(p, self.n, self.m, self.ell, self.point, self.sign)


def minimality_witness(indices: tuple[int, int, int], variant: str = STANDARD) -> Witness:
    """Functional separating ``B#_indices`` from the rest of its list ``I_k``.

    For ``B#_{a,b,b}`` it is ``D^(a,b)`` at ``(-1,-1)``, for ``B#_{b,a,b}``
    ``D^(b,a)`` at ``(-1,-1)``, and for ``B#_{b,b,a}`` the mixed
    directional derivative ``d1^a (d1 +- d2)^b`` at ``(1,-1)``.
    """
    x, y, w = indices
    sign = 1 if variant == STANDARD else -1
    if y == w and x <= y:
        return Witness(x, y, 0, (-1, -1), sign)
    if x == w and y <= x:
        return Witness(x, y, 0, (-1, -1), sign)
    if x == y and w <= x:
        return Witness(w, 0, x, (1, -1), sign)
    raise ValueError(f"{indices} is not a member of any generator list I_k")
