"""Acceptance suite: eleven criteria, each checked by the library and by an independent oracle.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary.  The library side comes
from :mod:`boxsubdiv.checks`; the oracle side recomputes the same facts
with sympy or with direct recursions that do not share code paths with
the library.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest
import sympy

from boxsubdiv import checks
from boxsubdiv.boxspline import box_symbol, direction_matrix, ik_indices, max_sumrule_order, minimality_witness
from boxsubdiv.catalog import BUTTERFLY_TABLE, INTERP4PT2D_TABLE, get_scheme, gp_combination_symbol
from boxsubdiv.convergence import DataGrid, certify_convergence, subdivide
from boxsubdiv.laurent import LaurentPoly

z1, z2 = sympy.symbols("z1 z2")
half = sympy.Rational(1, 2)


def sym(p: LaurentPoly):
    xs = sympy.symbols(" ".join(f"z{i + 1}" for i in range(p.dim)), seq=True)
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[x ** e for x, e in zip(xs, exp)])
         for exp, c in p.terms.items()),
        sympy.Integer(0),
    )


def box(a, b, c, d=0, modified=False):
    third = (z1 + z2) / 2 if modified else (1 + z1 * z2) / 2
    return ((1 + z1) / 2) ** a * ((1 + z2) / 2) ** b * third ** c * ((1 + z1 / z2) / 2) ** d


def same(lhs, rhs) -> bool:
    return sympy.simplify(sympy.expand(lhs - rhs)) == 0


ZSET = ((-1, -1), (-1, 1), (1, -1))


def run_criterion(record, number, library, oracle, limit):
    """The time limit applies to the library run; the oracle is untimed."""
    t0 = time.perf_counter()
    result = library()
    seconds = time.perf_counter() - t0
    oracle_failures = oracle()
    passed = result.passed and not oracle_failures and seconds < limit
    record(number, result.title, passed, seconds)
    problems = [f"{c.name}: {c.detail}" for c in result.failures()] + oracle_failures
    if seconds >= limit:
        problems.append(f"took {seconds:.1f}s, limit {limit}s")
    assert passed, "; ".join(problems)


# ---------------------------------------------------------------------------


def oracle_1():
    cols = direction_matrix(3).columns
    fails = []
    dets = {idx: sympy.Matrix([cols[i - 1] for i in idx]).T.det() for idx in itertools.combinations(range(1, 8), 3)}
    odd = [i for i, d in dets.items() if d % 2]
    if len(odd) != 28:
        fails.append(f"sympy finds {len(odd)} odd selections")
    even = {i: d for i, d in dets.items() if d % 2 == 0}
    if even != {(1, 2, 4): 0, (1, 3, 5): 0, (1, 6, 7): 0, (2, 3, 6): 0, (2, 5, 7): 0, (3, 4, 7): 0, (4, 5, 6): -2}:
        fails.append(f"even selections {even}")
    restricted = [i for i in itertools.combinations(range(1, 7), 3) if abs(dets[i]) == 1]
    if len(restricted) != 16:
        fails.append(f"restricted count {len(restricted)}")
    two = [sympy.Matrix(c).T.det() for c in itertools.combinations([(1, 0), (0, 1), (1, 1)], 2)]
    if any(abs(d) != 1 for d in two):
        fails.append("d=2 determinants")
    return fails


def oracle_2():
    f1, f2, s = (1 + z1) / 2, (1 + z2) / 2, (z1 + z2) / 2
    ids = [
        (z1 ** 2 - 1, -4 * f1 * f2 + 4 * f1 * s),
        (z2 ** 2 - 1, -4 * f1 * f2 + 4 * f2 * s),
        ((z1 + 1) * (z2 + 1), 4 * f1 * f2),
        (f1 * f2, (z1 + 1) * (z2 + 1) / 4),
        (f1 * s, (z1 ** 2 - 1) / 4 + (z1 + 1) * (z2 + 1) / 4),
        (f2 * s, (z2 ** 2 - 1) / 4 + (z1 + 1) * (z2 + 1) / 4),
        (half * (1 - z2) * box(1, 0, 0) + half * (1 - z1) * box(0, 1, 0) + box(0, 0, 1), 1),
        (box(1, 0, 0, modified=True) + box(0, 1, 0, modified=True) - box(0, 0, 1, modified=True), 1),
    ]
    return [f"identity {i}" for i, (l, r) in enumerate(ids) if not same(l, r)]


def oracle_3():
    """Parity by an F_2 rank computation, vanishing by integer products."""
    fails = []
    for d in range(1, 5):
        verts = [v for v in itertools.product((0, 1), repeat=d) if any(v)]
        pts = [e for e in itertools.product((-1, 1), repeat=d) if -1 in e]
        for cols in itertools.combinations(verts, d):
            m = sympy.Matrix(cols).T
            odd = m.det() % 2 == 1
            vanish = all(
                any(sympy.prod([e[i] ** c[i] for i in range(d)]) == -1 for c in cols) for e in pts
            )
            if vanish != odd:
                fails.append(f"d={d} {cols}")
    return fails


def oracle_4():
    """Sympy derivative check on a sample of quadruples."""
    rng = random.Random(4)
    quads = [q for q in itertools.product(range(5), repeat=4) if 0 < sum(q) <= 8]
    fails = []
    for q in rng.sample(quads, 12):
        expr = sympy.expand(4 * box(*q) * z2 ** q[3])
        k = 0
        while True:
            ok = all(
                sympy.diff(expr, z1, n, z2, k - n).subs({z1: e[0], z2: e[1]}) == 0
                for n in range(k + 1) for e in ZSET
            )
            if not ok:
                break
            k += 1
        if k != max_sumrule_order(*q):
            fails.append(f"{q}: sympy {k}")
    return fails


def oracle_5():
    ids = [
        (4 * box(1, 1, 1, 1), 4 / z2 * (2 * box(2, 2, 1) - box(1, 1, 2))),
        (4 * box(1, 1, 1, 1), (1 + z1 / z2) / 2 * 4 * box(1, 1, 1)),
        (4 * box(2, 2, 1, 1), 4 / z2 * (2 * box(3, 3, 1) - box(2, 2, 2))),
        (4 * box(4, 4, 1, 1), 4 / z2 * (2 * box(5, 5, 1) - box(4, 4, 2))),
    ]
    fails = [f"display {i}" for i, (l, r) in enumerate(ids) if not same(l, r)]
    for q, k, kappa in (((1, 1, 1, 1), 2, 3), ((2, 2, 1, 1), 4, 4), ((4, 4, 1, 1), 6, 6)):
        a, b, c, d = q
        if a + b + c + d - max(a, b, c + d) != k or a + b + c + d - max(a, b, c, d) != kappa:
            fails.append(f"closed forms {q}")
    return fails


def table_symbol(table, den):
    h = len(table)
    return sum(
        sympy.Rational(v, den) * z1 ** c * z2 ** (h - 1 - r)
        for r, row in enumerate(table) for c, v in enumerate(row) if v
    )


def zk_order_sympy(expr, cap):
    if expr.subs({z1: 1, z2: 1}) != 4:
        return 0
    k = 0
    while k < cap:
        if not all(sympy.diff(expr, z1, n, z2, k - n).subs({z1: e[0], z2: e[1]}) == 0 for n in range(k + 1) for e in ZSET):
            return k
        k += 1
    return k


def oracle_6():
    a = table_symbol(INTERP4PT2D_TABLE, 32)
    fails = []
    rhs1 = -16 * box(4, 4, 0) - 2 * (z1 ** 2 + z2 ** 2) * box(2, 2, 2) + 8 * (1 + z1 + z2) * box(3, 3, 1)
    rhs2 = 4 * (-4 * box(4, 4, 0) - (z1 ** 2 + z2 ** 2) / 2 * box(2, 2, 2) + 6 * (1 + z1 + z2) / 3 * box(3, 3, 1))
    if not same(a, rhs1) or not same(a, rhs2):
        fails.append("combination")
    if zk_order_sympy(sympy.expand(a), 6) != 4:
        fails.append("order")
    if sum([-4, -1, 6]) != 1:
        fails.append("weights")
    return fails


def oracle_7():
    a = sympy.expand(table_symbol(BUTTERFLY_TABLE, 16))
    fails = []
    rhs1 = 4 * (26 * (7 + 6 * z1 * z2) / 13 * box(3, 3, 1) - 2 * z2 * box(3, 1, 3) - 2 * z1 * box(1, 3, 3)
                - 21 * (1 + z1 + z2) / 3 * box(2, 2, 2))
    rhs2 = 4 * (7 * z1 * z2 * box(2, 2, 2) - 2 * z1 * box(1, 3, 3) - 2 * z2 * box(3, 1, 3) - 2 * z1 * z2 * box(3, 3, 1))
    if not same(a, rhs1):
        fails.append("first combination")
    if not same(a, rhs2):
        fails.append("second combination")
    if zk_order_sympy(a, 6) != 4:
        fails.append("order")
    q, r = sympy.div(sympy.Poly(a, z1, z2), sympy.Poly(sympy.expand(box(1, 1, 1)), z1, z2))
    if not r.is_zero:
        fails.append("B111 does not divide")
    b = q.as_expr()
    if all(b.subs({z1: e[0], z2: e[1]}) == 0 for e in ZSET) and b.subs({z1: 1, z2: 1}) == 4:
        fails.append("sympy: quotient satisfies Z_1 (b(1) = 4 and b vanishes on the zero set)")
    return fails


def vector_scheme_norm(Bm, r):
    """Norm of S_B^r by running the vector recursion on unit data (no symbol products)."""
    n = Bm.size
    coeff = [{e: c for e, c in Bm[i, j].terms.items()} for i in range(n) for j in range(n)]
    mod = 2 ** r
    sums = {}
    for i in range(n):
        data = {(0, 0): [Fraction(int(k == i)) for k in range(n)]}
        for _ in range(r):
            out = {}
            for beta, vec in data.items():
                for ii in range(n):
                    if not vec[ii]:
                        continue
                    for j in range(n):
                        for g, c in coeff[ii * n + j].items():
                            alpha = (2 * beta[0] + g[0], 2 * beta[1] + g[1])
                            out.setdefault(alpha, [Fraction(0)] * n)[j] += vec[ii] * c
            data = out
        for alpha, vec in data.items():
            for j in range(n):
                key = (alpha[0] % mod, alpha[1] % mod, j)
                sums[key] = sums.get(key, 0) + abs(vec[j])
    return max(sums.values())


def oracle_8():
    fails = []
    a = gp_combination_symbol()
    cert = certify_convergence(a, 8)
    if not cert.certified or vector_scheme_norm(cert.difference_symbol, cert.r) != cert.norm:
        fails.append("vector recursion disagrees with the certified norm")
    b11 = (z1 * z2 ** 3 - z2 ** 3 + z1 * z2 ** 2 + z2 ** 2 + 4 * z2 + 2) / 4
    b21 = (z1 * z2 - z1 - z2 + 1) / 4
    b22 = (z1 ** 2 * z2 ** 2 + 2 * z1 * z2 + 2 * z1 + 3) / 4
    aa = sym(a)
    if not same(aa * (1 - z1), (1 - z1 ** 2) * b11 + (1 - z2 ** 2) * b21):
        fails.append("printed B column 1")
    if not same(aa * (1 - z2), (1 - z2 ** 2) * b22):
        fails.append("printed B column 2")
    if vector_scheme_norm(checks.reference_difference_symbol(), 5) >= 1:
        fails.append("printed B norm at r=5")
    return fails


def oracle_9():
    rng = random.Random(99)
    fails = []
    for t in range(8):
        k = 1 + t % 4
        a = checks.random_nonmember(rng, k)
        if zk_order_sympy(sympy.expand(sym(a)), k) >= k:
            fails.append(f"non-member {t} satisfies Z_{k} under sympy")
    return fails


def oracle_10():
    fails = []
    for modified, sign in ((False, 1), (True, -1)):
        variant = "modified" if modified else "standard"
        for k in range(1, 5):
            idx = ik_indices(k)
            for t in idx:
                w = minimality_witness(t, variant)
                for u in idx:
                    f = box(*u, modified=modified)
                    expr = sympy.diff(f, z1, w.n, z2, w.m)
                    for _ in range(w.ell):
                        expr = sympy.diff(expr, z1) + sign * sympy.diff(expr, z2)
                    v = expr.subs({z1: w.point[0], z2: w.point[1]})
                    if (v != 0) != (u == t):
                        fails.append(f"{variant} {t} on {u}: {v}")
    return fails


def oracle_11():
    fails = []
    g = subdivide(get_scheme("bspline-2").mask, DataGrid.delta(1), 4)
    for (i,), v in g.items():
        x = Fraction(i + 1, 16)
        if v != max(Fraction(0), 1 - abs(x - 1)):
            fails.append(f"hat at {x}")
    sq = subdivide(get_scheme("box3-1-1-0").mask, DataGrid.delta(2), 3)
    if set(sq.values.values()) != {1} or len(sq.values) != 64:
        fails.append("characteristic function of the unit square")
    for name in ("butterfly", "interp4pt2d"):
        if not checks.preserves_coarse_data(get_scheme(name).mask, 3, seed=11):
            fails.append(f"{name} coarse data")
    return fails


CASES = [
    (1, checks.criterion_1, oracle_1, 1.0),
    (2, checks.criterion_2, oracle_2, 1.0),
    (3, checks.criterion_3, oracle_3, 10.0),
    (4, checks.criterion_4, oracle_4, 60.0),
    (5, checks.criterion_5, oracle_5, 1.0),
    (6, checks.criterion_6, oracle_6, 1.0),
    (7, checks.criterion_7, oracle_7, 1.0),
    (8, checks.criterion_8, oracle_8, 120.0),
    (9, checks.criterion_9, oracle_9, 120.0),
    (10, checks.criterion_10, oracle_10, 10.0),
    (11, checks.criterion_11, oracle_11, 30.0),
]


@pytest.mark.parametrize("number, library, oracle, limit", CASES, ids=[f"criterion_{c[0]:02d}" for c in CASES])
def test_criterion(record_acceptance, number, library, oracle, limit):
    run_criterion(record_acceptance, number, library, oracle, limit)


if __name__ == "__main__":
    for number, library, oracle, _ in CASES:
        t0 = time.perf_counter()
        res = library()
        extra = oracle()
        ok = res.passed and not extra
        print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'} ({time.perf_counter() - t0:6.2f}s) {res.title}")
