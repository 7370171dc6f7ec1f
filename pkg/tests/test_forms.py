"""Forms, substitution operators, transfer matrix, and the quotient."""

import random
from fractions import Fraction

import pytest

from sternsums.forms import (
    IDENTITY,
    IOTA,
    RHO,
    RHO_TWIST,
    SIGMA,
    TAU,
    HomogPoly,
    Mat2,
    monomial_name,
    operator_matrix,
    phi_matrix,
    substitute,
    swap_matrix,
    sym_class_labels,
    sym_quotient,
)
from sternsums.linalg import RationalMatrix


def test_shear_constants_and_derived_products():
    assert (SIGMA.a, SIGMA.b, SIGMA.c, SIGMA.d) == (1, 0, 1, 1)
    assert (TAU.a, TAU.b, TAU.c, TAU.d) == (1, 1, 0, 1)
    assert RHO == SIGMA @ TAU.inverse()
    assert IOTA == SIGMA @ TAU.inverse() @ SIGMA
    assert RHO_TWIST == TAU.inverse() @ SIGMA
    for m in (SIGMA, TAU, RHO, IOTA, RHO_TWIST):
        assert m.det() == 1
    assert RHO == Mat2(1, -1, 1, 0)
    assert IOTA == Mat2(0, -1, 1, 0)


def test_mat2_inverse_requires_unimodular():
    with pytest.raises(ValueError):
        Mat2(2, 0, 0, 2).inverse()
    assert Mat2(1, 0, 0, -1).inverse() == Mat2(1, 0, 0, -1)


def test_substitute_goldens():
    # lower shear sends x^3 to (x+y)^3
    assert substitute(SIGMA, HomogPoly.monomial(3, 3)) == HomogPoly([1, 3, 3, 1])
    f = HomogPoly([Fraction(1, 2), -3, 0, 5])
    assert substitute(IDENTITY, f) == f
    # quarter turn: f(y, -x) sends x^2 to y^2
    assert substitute(IOTA, HomogPoly.monomial(2, 2)) == HomogPoly([1, 0, 0])


def test_substitute_composes_with_matrix_product():
    rng = random.Random(1901)
    for _ in range(80):
        g = Mat2(*(rng.randint(-3, 3) for _ in range(4)))
        d = Mat2(*(rng.randint(-3, 3) for _ in range(4)))
        r = rng.randint(0, 6)
        f = HomogPoly(
            [Fraction(rng.randint(-5, 5), rng.choice([1, 2, 3])) for _ in range(r + 1)]
        )
        assert substitute(g @ d, f) == substitute(g, substitute(d, f))


def test_operator_matrix_contract():
    rng = random.Random(55)
    for _ in range(30):
        g = Mat2(*(rng.randint(-3, 3) for _ in range(4)))
        r = rng.randint(0, 5)
        m = operator_matrix(g, r)
        f = HomogPoly([rng.randint(-4, 4) for _ in range(r + 1)])
        assert m.mat_vec(list(f.coeffs)) == list(substitute(g, f).coeffs)


def test_operator_matrix_of_shears_is_binomial_triangle():
    from math import comb

    m = operator_matrix(SIGMA, 3)
    assert m.to_lists() == [[comb(b, a) for b in range(4)] for a in range(4)]
    assert operator_matrix(IDENTITY, 5) == RationalMatrix.identity(6)
    # twist matrix at r=2, verified per monomial by hand expansion of f(y, y-x)
    assert operator_matrix(RHO_TWIST, 2).to_lists() == [
        [1, 1, 1],
        [-2, -1, 0],
        [1, 0, 0],
    ]


def test_operator_matrix_rho_r2_column_by_column():
    m = operator_matrix(RHO, 2)
    for b in range(3):
        expanded = substitute(RHO, HomogPoly.monomial(b, 2))
        assert [m[a, b] for a in range(3)] == list(expanded.coeffs)


def test_phi_matrix_goldens():
    assert phi_matrix(3).to_lists() == [
        [2, 1, 1, 1],
        [3, 2, 2, 3],
        [3, 2, 2, 3],
        [1, 1, 1, 2],
    ]
    assert phi_matrix(0).to_lists() == [[2]]
    assert phi_matrix(2).to_lists() == [[2, 1, 1], [2, 2, 2], [1, 1, 2]]


def test_phi_matrix_equals_sum_of_shear_operators():
    for r in range(0, 41):
        assert phi_matrix(r) == operator_matrix(SIGMA, r) + operator_matrix(TAU, r)


def test_finite_orders_of_twist_and_quarter_turn():
    for r in range(2, 41, 2):
        n = r + 1
        ident = RationalMatrix.identity(n)
        for g in (RHO, RHO_TWIST):
            m = operator_matrix(g, r)
            assert m @ m @ m == ident, (g, r)
        i = operator_matrix(IOTA, r)
        assert i @ i == ident, r
    for r in range(1, 40, 2):
        m = operator_matrix(RHO, r)
        assert m.power(6) == RationalMatrix.identity(r + 1)
        assert m.power(3) == -RationalMatrix.identity(r + 1)


def test_phi_commutes_with_swap():
    for r in range(0, 41):
        s = swap_matrix(r)
        p = phi_matrix(r)
        assert p @ s == s @ p, r


def test_sym_quotient_goldens():
    proj, phi_sym = sym_quotient(3)
    assert phi_sym.to_lists() == [[3, 2], [6, 4]]
    assert proj.to_lists() == [[1, 0, 0, 1], [0, 1, 1, 0]]
    assert sym_quotient(0)[1].to_lists() == [[2]]
    proj2, phi_sym2 = sym_quotient(2)
    assert proj2 @ phi_matrix(2) == phi_sym2 @ proj2
    assert phi_sym2.to_lists() == [[3, 2], [2, 2]]


def test_sym_quotient_commuting_square():
    for r in range(0, 41):
        proj, phi_sym = sym_quotient(r)
        assert proj @ phi_matrix(r) == phi_sym @ proj, r
        assert proj.nrows == (r + 2) // 2


def test_projection_convention_keeps_integers():
    proj, _ = sym_quotient(4)
    assert proj.to_lists() == [
        [1, 0, 0, 0, 1],
        [0, 1, 0, 1, 0],
        [0, 0, 1, 0, 0],
    ]


def test_form_evaluation_and_algebra():
    f = HomogPoly([1, 0, -2, 5])  # 5x^3 - 2x^2 y + y^3
    assert f(1, 1) == 4
    assert f(2, 3) == 5 * 8 - 2 * 4 * 3 + 27
    assert f.swap().coeffs == (5, -2, 0, 1)
    g = f + f
    assert g == 2 * f
    assert (f - f).coeffs == (0, 0, 0, 0)
    assert f.degree == 3
    assert HomogPoly([7]).degree == 0
    assert HomogPoly([7])(100, -3) == 7


def test_monomial_helpers():
    assert HomogPoly.monomial(2, 3).coeffs == (0, 0, 1, 0)
    with pytest.raises(ValueError):
        HomogPoly.monomial(4, 3)
    assert monomial_name(3, 3) == "x^3"
    assert monomial_name(2, 3) == "x^2*y"
    assert monomial_name(0, 2) == "y^2"
    assert monomial_name(0, 0) == "1"
    assert sym_class_labels(3) == ["x^3", "x^2*y"]


def test_int_coeffs_detection():
    assert HomogPoly([1, Fraction(4, 2)]).int_coeffs() == [1, 2]
    assert HomogPoly([1, Fraction(1, 2)]).int_coeffs() is None
