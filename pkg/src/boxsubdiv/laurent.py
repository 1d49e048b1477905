"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`LaurentPoly` maps exponent vectors in ``Z^d`` to nonzero
:class:`fractions.Fraction` coefficients.  Values are immutable; every
operation returns a new polynomial.  Terms are printed and iterated in
graded lexicographic order.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, prod
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

MAX_DIM = 8

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class DimensionMismatch(ValueError):
    """Operands live in rings with a different number of variables."""


def grlex_key(exponent: Exponent) -> tuple[int, Exponent]:
    return (sum(exponent), exponent)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _check_dim(dim: int) -> int:
    if not isinstance(dim, int) or not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in [1, {MAX_DIM}], got {dim!r}")
    return dim


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``dim`` variables.

    Parameters
    ----------
    terms : mapping of exponent tuple to coefficient
        Coefficients must be exact (int or Fraction).  Zero coefficients
        are dropped.
    dim : int, optional
        Number of variables.  Required when ``terms`` is empty.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None = None, dim: int | None = None):
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if dim is None:
                dim = len(exp)
            elif len(exp) != dim:
                raise DimensionMismatch(f"exponent {exp} does not have length {dim}")
            c = as_fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        if dim is None:
            raise ValueError("dim is required for the zero polynomial")
        self.dim = _check_dim(dim)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], dim: int) -> "LaurentPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls._raw({}, _check_dim(dim))

    @classmethod
    def constant(cls, value: Scalar, dim: int) -> "LaurentPoly":
        return cls({(0,) * dim: value}, dim)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Scalar = 1) -> "LaurentPoly":
        return cls({tuple(exponent): coeff}, len(exponent))

    @classmethod
    def variable(cls, j: int, dim: int) -> "LaurentPoly":
        """The coordinate ``z_{j+1}`` (0-based index ``j``)."""
        exp = [0] * dim
        exp[j] = 1
        return cls.monomial(exp)

    # -- container protocol -------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def support(self) -> list[Exponent]:
        return [e for e, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponent(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no support")
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponent(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no support")
        return tuple(max(col) for col in zip(*self._terms))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise DimensionMismatch(f"dimension {self.dim} vs {other.dim}")
            return other
        return LaurentPoly.constant(as_fraction(other), self.dim)

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.dim)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.dim)

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def scale(self, factor: Scalar) -> "LaurentPoly":
        f = as_fraction(factor)
        if not f:
            return LaurentPoly.zero(self.dim)
        return LaurentPoly._raw({e: c * f for e, c in self._terms.items()}, self.dim)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimension {self.dim} vs {other.dim}")
        if len(other._terms) > len(self._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out: dict[Exponent, Fraction] = {}
        get = out.get
        d = self.dim
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                e = tuple(e1[i] + e2[i] for i in range(d)) if d > 2 else (
                    (e1[0] + e2[0],) if d == 1 else (e1[0] + e2[0], e1[1] + e2[1]))
                out[e] = get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, d)

    def __rmul__(self, other) -> "LaurentPoly":
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return NotImplemented
        return self.scale(1 / as_fraction(other))

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int) and self.is_monomial():
                (e, c), = self._terms.items()
                return LaurentPoly._raw({tuple(n * x for x in e): c ** n}, self.dim)
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly.constant(1, self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.dim == other.dim and self._terms == other._terms
        try:
            return self == LaurentPoly.constant(as_fraction(other), self.dim)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitutions -----------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value ``sum c_a * point^a``.

        Raises ``ZeroDivisionError`` if a coordinate is zero and a term
        carries a negative exponent in that variable.
        """
        if len(point) != self.dim:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.dim}")
        x = [as_fraction(v) for v in point]
        for i, xi in enumerate(x):
            if xi == 0 and any(e[i] < 0 for e in self._terms):
                raise ZeroDivisionError(f"coordinate {i} is zero but a negative exponent is present")
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * prod(x[i] ** e[i] for i in range(self.dim))
        return total

    __call__ = evaluate

    def derivative(self, orders: Sequence[int]) -> "LaurentPoly":
        """Mixed partial derivative ``D^orders`` (one order per variable)."""
        if len(orders) != self.dim:
            raise DimensionMismatch(f"multi-index has length {len(orders)}, expected {self.dim}")
        if any(j < 0 for j in orders):
            raise ValueError("derivative orders must be nonnegative")
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            factor = 1
            for ei, ji in zip(e, orders):
                factor *= falling_factorial(ei, ji)
                if not factor:
                    break
            if factor:
                out[tuple(ei - ji for ei, ji in zip(e, orders))] = c * factor
        return LaurentPoly._raw(out, self.dim)

    def derivative_at(self, orders: Sequence[int], point: Sequence[Scalar]) -> Fraction:
        """``(D^orders p)(point)`` without materialising the derivative."""
        x = [as_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for ei, ji, xi in zip(e, orders, x):
                f = falling_factorial(ei, ji)
                if not f:
                    term = 0
                    break
                term *= f * xi ** (ei - ji)
            total += term
        return total

    def substitute_power(self, m: int) -> "LaurentPoly":
        """``p(z^m)``: every exponent multiplied by ``m``."""
        if m == 0:
            return LaurentPoly.constant(sum(self._terms.values(), Fraction(0)), self.dim)
        return LaurentPoly._raw({tuple(m * x for x in e): c for e, c in self._terms.items()}, self.dim)

    def substitute_squares(self) -> "LaurentPoly":
        return self.substitute_power(2)

    def shift(self, alpha: Sequence[int]) -> "LaurentPoly":
        """Multiply by the unit ``z^alpha``."""
        alpha = tuple(alpha)
        if len(alpha) != self.dim:
            raise DimensionMismatch(f"shift has length {len(alpha)}, expected {self.dim}")
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, alpha)): c for e, c in self._terms.items()}, self.dim
        )

    def normalize_support(self) -> tuple["LaurentPoly", Exponent]:
        """Return ``(z^-m p, m)`` with ``m`` the componentwise minimum exponent."""
        if not self._terms:
            raise ValueError("cannot normalize the support of the zero polynomial")
        m = self.min_exponent()
        return self.shift(tuple(-x for x in m)), m

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self._terms for x in e)

    def reflect(self, variables: Iterable[int]) -> "LaurentPoly":
        """Substitute ``z_j -> 1/z_j`` for each listed variable."""
        flip = set(variables)
        return LaurentPoly._raw(
            {tuple(-x if i in flip else x for i, x in enumerate(e)): c for e, c in self._terms.items()},
            self.dim,
        )

    def common_denominator(self) -> int:
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        return den

    # -- printing -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({self}, dim={self.dim})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"z{i + 1}" if x == 1 else f"z{i + 1}^{x}" for i, x in enumerate(e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}" if c.denominator == 1 else f"({c})*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def falling_factorial(n: int, k: int) -> int:
    """``n (n-1) ... (n-k+1)``; valid for negative ``n``."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


# ---------------------------------------------------------------------------
# functional interface


def arithmetic(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension {a.dim} vs {b.dim}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def evaluate(p: LaurentPoly, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


def derivative(p: LaurentPoly, orders: Sequence[int]) -> LaurentPoly:
    return p.derivative(orders)


def substitute_squares(p: LaurentPoly) -> LaurentPoly:
    return p.substitute_squares()


def monomial_shift(p: LaurentPoly, alpha: Sequence[int]) -> LaurentPoly:
    return p.shift(alpha)


def normalize_support(p: LaurentPoly) -> tuple[LaurentPoly, Exponent]:
    return p.normalize_support()


def hypercube(d: int) -> list[Exponent]:
    """Vertices of ``{0,1}^d`` in lexicographic order."""
    return list(itertools.product((0, 1), repeat=d))


def variables(dim: int) -> tuple[LaurentPoly, ...]:
    return tuple(LaurentPoly.variable(j, dim) for j in range(dim))


# ---------------------------------------------------------------------------
# multivariate division


def divide(p: LaurentPoly, divisors: Sequence[LaurentPoly]) -> tuple[list[LaurentPoly], LaurentPoly]:
    """Multivariate division with respect to graded lexicographic order.

    Returns ``(quotients, remainder)`` with
    ``p == sum(q_i * f_i) + remainder`` exactly.  Divisors are tried in the
    given order at every step.  All operands must be polynomials (use
    :meth:`LaurentPoly.normalize_support` first for Laurent input).
    """
    if not divisors:
        raise ValueError("need at least one divisor")
    for f in (p, *divisors):
        if f.dim != p.dim:
            raise DimensionMismatch("divisors must share the dimension of the dividend")
        if not f.is_polynomial():
            raise ValueError("division is defined for polynomials only; shift Laurent input first")
    if any(f.is_zero() for f in divisors):
        raise ZeroDivisionError("division by the zero polynomial")
    dim = p.dim
    leads = [f.leading_term() for f in divisors]
    quotients: list[dict[Exponent, Fraction]] = [{} for _ in divisors]
    remainder: dict[Exponent, Fraction] = {}
    work = dict(p._terms)
    while work:
        exp = max(work, key=grlex_key)
        coeff = work[exp]
        for i, (lexp, lcoeff) in enumerate(leads):
            if all(x >= y for x, y in zip(exp, lexp)):
                shift = tuple(x - y for x, y in zip(exp, lexp))
                factor = coeff / lcoeff
                quotients[i][shift] = quotients[i].get(shift, 0) + factor
                for fe, fc in divisors[i]._terms.items():
                    te = tuple(a + b for a, b in zip(fe, shift))
                    v = work.get(te, 0) - factor * fc
                    if v:
                        work[te] = v
                    else:
                        work.pop(te, None)
                break
        else:
            remainder[exp] = coeff
            del work[exp]
    qs = [LaurentPoly({e: c for e, c in q.items() if c}, dim) for q in quotients]
    return qs, LaurentPoly._raw(remainder, dim)
