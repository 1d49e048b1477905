"""Built-in masks: two interpolatory schemes, a convergent box-spline mix, and families.

Fixed names: ``butterfly``, ``gp-combination``, ``interp4pt2d``.
Parametrized families: ``box3-A-B-C`` (``4 B#_{A,B,C}``), ``box4-A-B-C-D``
(``4 B#_{A,B,C,D}``, shifted to a polynomial) and ``bspline-K``
(univariate ``2 ((1+z)/2)^K``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .boxspline import box_symbol
from .laurent import LaurentPoly
from .mask import Mask

INTERP4PT2D_TABLE = (
    (0, 0, -1, -2, -1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0),
    (-1, 0, 10, 18, 10, 0, -1),
    (-2, 0, 18, 32, 18, 0, -2),
    (-1, 0, 10, 18, 10, 0, -1),
    (0, 0, 0, 0, 0, 0, 0),
    (0, 0, -1, -2, -1, 0, 0),
)

BUTTERFLY_TABLE = (
    (0, 0, 0, 0, -1, -1, 0),
    (0, 0, -1, 0, 2, 0, -1),
    (0, -1, 2, 8, 8, 2, -1),
    (0, 0, 8, 16, 8, 0, 0),
    (-1, 2, 8, 8, 2, -1, 0),
    (-1, 0, 2, 0, -1, 0, 0),
    (0, -1, -1, 0, 0, 0, 0),
)

FAMILY_DEFAULTS = ("box3-1-1-1", "box3-2-2-2", "box4-1-1-1-1", "bspline-2", "bspline-4")


class UnknownScheme(KeyError):
    def __init__(self, name: str, available: list[str]):
        super().__init__(name)
        self.name = name
        self.available = available

    def __str__(self) -> str:
        return (
            f"unknown scheme {self.name!r}; available: {', '.join(self.available)}, "
            "or families box3-A-B-C, box4-A-B-C-D, bspline-K"
        )


@dataclass(frozen=True)
class SchemeEntry:
    name: str
    mask: Mask
    description: str
    provenance: str
    known_order: Optional[int] = None
    known_interpolatory: Optional[bool] = None


def _interp4pt2d() -> SchemeEntry:
    return SchemeEntry(
        "interp4pt2d",
        Mask.from_table(INTERP4PT2D_TABLE, 32),
        "bivariate interpolatory four-point scheme, 7x7 mask over 32",
        "bivariate extension of the Dyn-Gregory-Levin four-point rule",
        4,
        True,
    )


def _butterfly() -> SchemeEntry:
    return SchemeEntry(
        "butterfly",
        Mask.from_table(BUTTERFLY_TABLE, 16),
        "butterfly interpolatory scheme, 7x7 mask over 16",
        "Dyn-Levin-Gregory butterfly rule",
        4,
        True,
    )


def gp_combination_symbol() -> LaurentPoly:
    return (box_symbol(1, 1, 0) + box_symbol(0, 1, 2)) * 2


def _gp_combination() -> SchemeEntry:
    return SchemeEntry(
        "gp-combination",
        Mask(gp_combination_symbol()),
        "4 (B#[1,1,0] + B#[0,1,2]) / 2, convergent though neither part is",
        "affine combination of a zero-order and a quadratic three-directional box spline",
        1,
        False,
    )


def _box3(a: int, b: int, c: int) -> SchemeEntry:
    return SchemeEntry(
        f"box3-{a}-{b}-{c}",
        Mask(box_symbol(a, b, c, normalized=False)),
        f"three-directional box spline 4 B#[{a},{b},{c}]",
        "three-directional box-spline refinement mask",
        a + b + c - max(a, b, c),
        None,
    )


def _box4(a: int, b: int, c: int, d: int) -> SchemeEntry:
    sym, _ = box_symbol(a, b, c, d, normalized=False).normalize_support()
    return SchemeEntry(
        f"box4-{a}-{b}-{c}-{d}",
        Mask(sym),
        f"four-directional box spline 4 B#[{a},{b},{c},{d}], shifted to a polynomial",
        "four-directional box-spline refinement mask",
        a + b + c + d - max(a, b, c + d),
        None,
    )


def _bspline(k: int) -> SchemeEntry:
    h = Fraction(1, 2)
    sym = LaurentPoly({(0,): h, (1,): h}, 1) ** k * 2
    return SchemeEntry(
        f"bspline-{k}",
        Mask(sym),
        f"univariate B-spline of order {k}, 2((1+z)/2)^{k}",
        "cardinal B-spline refinement mask",
        k,
        k <= 2,
    )


_FIXED: dict[str, Callable[[], SchemeEntry]] = {
    "butterfly": _butterfly,
    "gp-combination": _gp_combination,
    "interp4pt2d": _interp4pt2d,
}

_FAMILIES = (
    (re.compile(r"box3-(\d+)-(\d+)-(\d+)"), _box3, 3),
    (re.compile(r"box4-(\d+)-(\d+)-(\d+)-(\d+)"), _box4, 4),
    (re.compile(r"bspline-(\d+)"), _bspline, 1),
)

MAX_MULTIPLICITY = 16


def _available() -> list[str]:
    return sorted(set(_FIXED) | set(FAMILY_DEFAULTS))


def get_scheme(name: str) -> SchemeEntry:
    """Look up a fixed scheme or instantiate a family member."""
    if name in _FIXED:
        return _FIXED[name]()
    for pattern, build, _ in _FAMILIES:
        m = pattern.fullmatch(name)
        if m:
            args = [int(x) for x in m.groups()]
            if any(x > MAX_MULTIPLICITY for x in args):
                raise ValueError(f"multiplicities above {MAX_MULTIPLICITY} are not supported")
            if name.startswith("bspline") and args[0] < 1:
                raise ValueError("bspline order must be at least 1")
            if name.startswith("box") and sum(args) == 0:
                raise ValueError("at least one box-spline multiplicity must be positive")
            return build(*args)
    raise UnknownScheme(name, _available())


def is_scheme_name(name: str) -> bool:
    try:
        get_scheme(name)
    except (UnknownScheme, ValueError):
        return False
    return True


def list_schemes() -> list[tuple[str, str]]:
    """Alphabetical ``(name, description)`` pairs for the fixed schemes and sample family members."""
    return [(n, get_scheme(n).description) for n in _available()]
