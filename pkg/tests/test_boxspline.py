import itertools
from fractions import Fraction
from math import comb

import pytest
import sympy

from boxsubdiv.boxspline import (
    MODIFIED,
    STANDARD,
    assemble_expansion,
    box_derivative_formula,
    box_symbol,
    determinant,
    direction_matrix,
    expand_4dir_to_3dir,
    generator_q,
    generator_set,
    generator_set_Ik,
    ik_indices,
    kappa_exceeds_order,
    max_sumrule_order,
    minimality_witness,
    smoothness_kappa,
    unimodular_submatrices,
)
from boxsubdiv.laurent import LaurentPoly, variables
from boxsubdiv.sumrules import sumrule_order, zero_set

z1, z2 = variables(2)


def test_ik_lists():
    assert [str(l) for l in generator_set_Ik(1).labels] == ["B#[1,1,0]", "B#[1,0,1]", "B#[0,1,1]"]
    assert ik_indices(2) == [(2, 2, 0), (2, 0, 2), (0, 2, 2), (1, 1, 1)]
    i4 = ik_indices(4)
    assert len(i4) == 7 and i4[-1] == (2, 2, 2)
    assert ik_indices(3) == [(3, 3, 0), (3, 0, 3), (0, 3, 3), (2, 2, 1), (2, 1, 2), (1, 2, 2)]


@pytest.mark.parametrize("k", range(1, 6))
def test_every_ik_member_has_order_at_least_k(k):
    for t in ik_indices(k):
        assert sumrule_order(box_symbol(*t, normalized=False)) >= k
        assert sumrule_order(box_symbol(*t, variant=MODIFIED, normalized=False)) >= k


def test_determinant_against_sympy():
    for cols in itertools.combinations(direction_matrix(4).columns, 4):
        assert determinant(cols) == sympy.Matrix(cols).T.det()


def test_direction_matrix_sections():
    assert len(direction_matrix(4)) == 15
    assert len(direction_matrix(4, "first_two")) == 10
    with pytest.raises(ValueError):
        direction_matrix(2, "third")


def test_generator_q_values():
    q = generator_q([(1, 0), (1, 1)])
    assert q == (1 + z1) * (1 + z1 * z2) / 4
    qt = generator_q([(1, 0), (1, 1)], MODIFIED)
    assert qt == (1 + z1) * (z1 + z2) / 4
    with pytest.raises(ValueError):
        generator_q([(2, 0)])
    with pytest.raises(ValueError):
        generator_q([(1, 1, 1)], MODIFIED)


def test_modified_q_agrees_up_to_sign_on_zero_set():
    for s in unimodular_submatrices(direction_matrix(3, "first_two")):
        q, qt = generator_q(s.columns), generator_q(s.columns, MODIFIED)
        for e in zero_set(3):
            assert abs(q.evaluate(e)) == abs(qt.evaluate(e))


def test_generator_set_dispatch():
    assert len(generator_set(2, 3)) == 6
    assert len(generator_set(3, 1)) == 16
    g = generator_set(3, 2)
    assert len(g) == len(set(g.symbols))
    assert all(sumrule_order(s * 8) >= 2 for s in g.symbols)
    assert len(generator_set(1, 3)) == 1


def test_closed_forms():
    assert max_sumrule_order(1, 1, 1, 1) == 2 and smoothness_kappa(1, 1, 1, 1) == 3
    assert kappa_exceeds_order(1, 1, 1, 1) and not kappa_exceeds_order(2, 2, 1, 1)
    for q in itertools.product(range(4), repeat=4):
        a, b, c, d = q
        expected = (c + d > max(a, b)) and min(c, d) > 0
        assert kappa_exceeds_order(*q) == expected


@pytest.mark.parametrize("q", [(1, 1, 1, 1), (2, 0, 1, 3), (0, 2, 0, 2), (3, 1, 2, 1)])
def test_four_direction_expansion(q):
    terms = expand_4dir_to_3dir(*q)
    assert len(terms) == q[3] + 1
    assert assemble_expansion(terms) == box_symbol(*q)
    assert sum(c for _, c, _ in terms) == 1


@pytest.mark.parametrize("variant", [STANDARD, MODIFIED])
def test_derivative_formula_matches_direct_derivative(variant):
    for a, b, c in itertools.product(range(3), repeat=3):
        sym = box_symbol(a, b, c, variant=variant)
        for n, m in itertools.product(range(3), repeat=2):
            for pt in ((-1, -1), (1, -1), (Fraction(1, 2), 3)):
                assert box_derivative_formula(a, b, c, n, m, pt, variant) == sym.derivative_at((n, m), pt)


def test_witness_forms():
    w = minimality_witness((1, 3, 3))
    assert (w.n, w.m, w.ell, w.point) == (1, 3, 0, (-1, -1))
    w = minimality_witness((3, 3, 1), MODIFIED)
    assert (w.n, w.m, w.ell, w.point, w.sign) == (1, 0, 3, (1, -1), -1)
    with pytest.raises(ValueError):
        minimality_witness((1, 2, 3))


def test_box_symbol_validation():
    with pytest.raises(ValueError):
        box_symbol(-1, 0, 0)
    with pytest.raises(ValueError):
        box_symbol(1, 1, 1, 1, variant=MODIFIED)
    assert box_symbol(1, 1, 0, normalized=False) == (1 + z1) * (1 + z2)
    assert box_symbol(2, 3, 1).evaluate((1, 1)) == 1
