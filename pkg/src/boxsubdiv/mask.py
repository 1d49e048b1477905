"""Subdivision masks, submasks, and the JSON interchange format.

The on-disk format is::

    {"dim": d, "denominator": D, "coeffs": [{"idx": [i1, ..., id], "num": n}, ...]}

meaning ``a(z) = (1/D) * sum n * z^idx``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Sequence

from .laurent import Exponent, LaurentPoly, hypercube


class MaskFormatError(ValueError):
    """A mask file or mask table is malformed."""


@dataclass(frozen=True)
class Mask:
    """A finitely supported mask with dilation ``2I``, stored as its symbol."""

    symbol: LaurentPoly

    @property
    def dim(self) -> int:
        return self.symbol.dim

    # -- structure ----------------------------------------------------------

    def submask(self, e: Sequence[int]) -> LaurentPoly:
        """Symbol of the coset slice ``a_e(z) = sum_alpha a_{e + 2 alpha} z^alpha``."""
        return submask(self, e)

    def submasks(self) -> dict[Exponent, LaurentPoly]:
        return {e: submask(self, e) for e in hypercube(self.dim)}

    def is_interpolatory(self) -> bool:
        return is_interpolatory(self)

    def normalized(self) -> "Mask":
        return Mask(self.symbol.normalize_support()[0])

    def value_at_one(self) -> Fraction:
        return self.symbol.evaluate((1,) * self.dim)

    # -- tables and files ---------------------------------------------------

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]], denominator: int = 1) -> "Mask":
        """Build a bivariate mask from a printed table.

        The bottom-left entry is index ``(0, 0)``; columns run along the
        first index and rows, read from the bottom, along the second.
        """
        if not rows or len({len(r) for r in rows}) != 1:
            raise MaskFormatError("table rows must be nonempty and of equal length")
        h = len(rows)
        terms = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v:
                    terms[(c, h - 1 - r)] = Fraction(v, denominator)
        return cls(LaurentPoly(terms, 2))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], denominator: int = 1) -> "Mask":
        """Univariate mask from coefficients at indices ``0, 1, 2, ...``."""
        return cls(LaurentPoly({(i,): Fraction(v, denominator) for i, v in enumerate(coeffs) if v}, 1))

    def to_table(self) -> tuple[list[list[int]], int, Exponent]:
        """Integer table, common denominator and the index of the bottom-left cell."""
        if self.dim not in (1, 2):
            raise ValueError("tables are only defined for d <= 2")
        den = self.symbol.common_denominator()
        if self.symbol.is_zero():
            return [[0]], den, (0,) * self.dim
        lo, hi = self.symbol.min_exponent(), self.symbol.max_exponent()
        if self.dim == 1:
            row = [int(self.symbol.coefficient((i,)) * den) for i in range(lo[0], hi[0] + 1)]
            return [row], den, lo
        rows = []
        for j in range(hi[1], lo[1] - 1, -1):
            rows.append([int(self.symbol.coefficient((i, j)) * den) for i in range(lo[0], hi[0] + 1)])
        return rows, den, lo

    def to_dict(self) -> dict:
        return mask_to_dict(self.symbol)

    @classmethod
    def from_dict(cls, data: dict) -> "Mask":
        return cls(poly_from_dict(data))

    def to_json(self) -> str:
        return dump_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Mask":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MaskFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Mask":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise MaskFormatError(f"cannot read {path}: {exc}") from exc
        return cls.from_json(text)


def dump_json(data) -> str:
    return json.dumps(data, separators=(", ", ": "))


def mask_to_dict(p: LaurentPoly) -> dict:
    den = 1
    for _, c in p.items():
        den = lcm(den, c.denominator)
    return {
        "dim": p.dim,
        "denominator": den,
        "coeffs": [{"idx": list(e), "num": int(c * den)} for e, c in p.items()],
    }


def _strict_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MaskFormatError(f"{what} must be an integer, got {value!r}")
    return value


def poly_from_dict(data: dict) -> LaurentPoly:
    """Parse the interchange mapping, rejecting duplicates and zero denominators."""
    if not isinstance(data, dict):
        raise MaskFormatError("mask data must be a JSON object")
    for key in ("dim", "denominator", "coeffs"):
        if key not in data:
            raise MaskFormatError(f"missing field {key!r}")
    dim = _strict_int(data["dim"], "dim")
    if not 1 <= dim <= 8:
        raise MaskFormatError(f"dim must be in [1, 8], got {dim}")
    den = _strict_int(data["denominator"], "denominator")
    if den == 0:
        raise MaskFormatError("denominator must be nonzero")
    if not isinstance(data["coeffs"], list):
        raise MaskFormatError("coeffs must be a list")
    terms: dict[Exponent, Fraction] = {}
    for k, entry in enumerate(data["coeffs"]):
        if not isinstance(entry, dict) or "idx" not in entry or "num" not in entry:
            raise MaskFormatError(f"coeffs[{k}] must have 'idx' and 'num'")
        idx = entry["idx"]
        if not isinstance(idx, list) or len(idx) != dim:
            raise MaskFormatError(f"coeffs[{k}].idx must be a list of {dim} integers")
        exp = tuple(_strict_int(x, f"coeffs[{k}].idx") for x in idx)
        if exp in terms:
            raise MaskFormatError(f"duplicate index {list(exp)}")
        terms[exp] = Fraction(_strict_int(entry["num"], f"coeffs[{k}].num"), den)
    return LaurentPoly(terms, dim)


# ---------------------------------------------------------------------------


def _symbol(m) -> LaurentPoly:
    return m.symbol if isinstance(m, Mask) else m


def submask(m: Mask | LaurentPoly, e: Sequence[int]) -> LaurentPoly:
    p = _symbol(m)
    e = tuple(e)
    if len(e) != p.dim or any(x not in (0, 1) for x in e):
        raise ValueError(f"e must be a vertex of {{0,1}}^{p.dim}, got {e}")
    out = {}
    for exp, c in p.terms.items():
        if all((x - y) % 2 == 0 for x, y in zip(exp, e)):
            out[tuple((x - y) // 2 for x, y in zip(exp, e))] = c
    return LaurentPoly(out, p.dim)


def reconstruct(submasks: dict[Exponent, LaurentPoly]) -> LaurentPoly:
    """Inverse of the coset split: ``a(z) = sum_e z^e a_e(z^2)``."""
    polys = list(submasks.values())
    if not polys:
        raise ValueError("no submasks given")
    out = LaurentPoly.zero(polys[0].dim)
    for e, p in submasks.items():
        out = out + p.substitute_squares().shift(e)
    return out


def is_interpolatory(m: Mask | LaurentPoly) -> bool:
    """True if some submask is a single monomial with coefficient one."""
    p = _symbol(m)
    for e in hypercube(p.dim):
        s = submask(p, e)
        if s.is_monomial() and next(iter(s.terms.values())) == 1:
            return True
    return False


def interpolatory_coset(m: Mask | LaurentPoly) -> tuple[Exponent, Exponent] | None:
    """``(e, beta)`` such that ``a_e(z) = z^beta``, or None."""
    p = _symbol(m)
    for e in hypercube(p.dim):
        s = submask(p, e)
        if s.is_monomial():
            (beta, c), = s.terms.items()
            if c == 1:
                return e, beta
    return None
