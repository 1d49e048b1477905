"""Exact sparse Gaussian elimination over the rationals.

Rows are sparse mappings ``column -> coefficient``.  Columns are eliminated
in increasing index order and the pivot for a column is the first
remaining row (in the original row order) with a nonzero entry there.  The
returned solution is the basic one: free unknowns are set to zero.  Because
the pivot columns are exactly the greedy first independent columns, the
solution depends only on the column order, not on the elimination path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

try:  # gmpy2 rationals are several times faster than Fraction
    from gmpy2 import mpq as _q
except ImportError:  # pragma: no cover
    _q = Fraction


class InconsistentSystem(ValueError):
    """The linear system has no solution."""

    def __init__(self, row: int):
        super().__init__(f"equation {row} reduces to 0 = nonzero")
        self.row = row


def solve_sparse(
    rows: Sequence[Mapping[int, Fraction]],
    rhs: Sequence[Fraction],
    n_cols: int,
) -> dict[int, Fraction]:
    """Solve ``A x = b`` exactly; return the nonzero entries of ``x``.

    Raises :class:`InconsistentSystem` if no solution exists.
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs differ in length")
    work: list[dict[int, object]] = []
    b: list[object] = []
    col_rows: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        r = {c: _q(v.numerator, v.denominator) if isinstance(v, Fraction) else _q(v)
             for c, v in row.items() if v}
        for c in r:
            if not 0 <= c < n_cols:
                raise IndexError(f"column {c} out of range")
            col_rows.setdefault(c, set()).add(i)
        work.append(r)
        v = rhs[i]
        b.append(_q(v.numerator, v.denominator) if isinstance(v, Fraction) else _q(v))

    active = set(range(len(work)))
    pivots: list[tuple[int, int]] = []  # (column, row)
    for c in sorted(col_rows):
        candidates = col_rows.get(c)
        if not candidates:
            continue
        cand = [i for i in candidates if i in active]
        if not cand:
            continue
        p = min(cand)
        prow = work[p]
        pv = prow[c]
        active.discard(p)
        pivots.append((c, p))
        for i in cand:
            if i == p:
                continue
            row = work[i]
            f = row[c] / pv
            for cc, vv in prow.items():
                nv = row.get(cc, 0) - f * vv
                if nv:
                    if cc not in row:
                        col_rows.setdefault(cc, set()).add(i)
                    row[cc] = nv
                else:
                    row.pop(cc, None)
                    col_rows[cc].discard(i)
            b[i] = b[i] - f * b[p]
        # the pivot row stays registered only for back substitution
        for cc in prow:
            col_rows[cc].discard(p)

    for i in sorted(active):
        if b[i]:
            raise InconsistentSystem(i)

    x: dict[int, object] = {}
    for c, p in reversed(pivots):
        row = work[p]
        acc = b[p]
        for cc, vv in row.items():
            if cc != c and cc in x:
                acc -= vv * x[cc]
        val = acc / row[c]
        if val:
            x[c] = val
    return {c: Fraction(int(v.numerator), int(v.denominator)) for c, v in sorted(x.items())}
