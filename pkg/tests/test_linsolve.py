import random
from fractions import Fraction

import pytest
import sympy

from boxsubdiv.linsolve import InconsistentSystem, solve_sparse


def dense(rows, n):
    return sympy.Matrix([[sympy.Rational(str(r.get(j, 0))) for j in range(n)] for r in rows])


@pytest.mark.parametrize("seed", range(15))
def test_random_consistent_systems(seed):
    rng = random.Random(seed)
    m, n = rng.randint(2, 8), rng.randint(2, 8)
    rows = [{j: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for j in range(n) if rng.random() < 0.5} for _ in range(m)]
    x_true = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
    rhs = [sum((c * x_true[j] for j, c in r.items()), Fraction(0)) for r in rows]
    x = solve_sparse(rows, rhs, n)
    for r, b in zip(rows, rhs):
        assert sum((c * x.get(j, 0) for j, c in r.items()), Fraction(0)) == b
    assert all(isinstance(v, Fraction) for v in x.values())
    # the basic solution uses only pivot columns of the sympy row-echelon form
    _, pivots = dense(rows, n).rref()
    assert set(x) <= set(pivots)


def test_inconsistent_system_is_detected():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(2), 1: Fraction(2)}]
    with pytest.raises(InconsistentSystem):
        solve_sparse(rows, [Fraction(1), Fraction(3)], 2)


def test_free_unknowns_are_zero():
    x = solve_sparse([{0: Fraction(1), 1: Fraction(1), 2: Fraction(1)}], [Fraction(6)], 3)
    assert x == {0: Fraction(6)}


def test_argument_validation():
    with pytest.raises(ValueError):
        solve_sparse([{}], [], 1)
    with pytest.raises(IndexError):
        solve_sparse([{5: Fraction(1)}], [Fraction(1)], 2)
