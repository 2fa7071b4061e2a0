import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from oracles import interpolate, olver_log_remainder

from conetorsion.exact import Poly
from conetorsion.olver import (ONE, W, WPoly, F, finite_part, log_expansion_coefficients, olver_polynomials,
                               phi_finite_part, phi_polynomial, phi_polynomial_alpha, phi_residue)

w = W


def test_first_polynomials():
    U, V = olver_polynomials(1)
    assert U[0] == V[0] == ONE
    assert U[1] == WPoly({1: Fraction(3, 24), 3: Fraction(-5, 24)})
    assert V[1] == WPoly({1: Fraction(-9, 24), 3: Fraction(7, 24)})


def test_parity():
    U, V = olver_polynomials(8)
    for j in range(9):
        assert all(e % 2 == j % 2 for e, _ in U[j].items())
        assert all(e % 2 == j % 2 for e, _ in V[j].items())
        assert U[j].degree == V[j].degree == 3 * j


def test_u_sum_numerically():
    nu, z = 10, 1.0
    U, _ = olver_polynomials(4)
    wf = 1 / math.sqrt(1 + z * z)
    series = sum(float(U[j](Fraction(wf))) / nu ** j for j in range(5))
    mpmath.mp.dps = 30
    root = mpmath.sqrt(1 + z * z)
    eta = root + mpmath.log(z / (1 + root))
    direct = mpmath.besseli(nu, nu * z) * mpmath.sqrt(2 * mpmath.pi * nu) * root ** 0.5 * mpmath.exp(-nu * eta)
    assert abs(float(direct) / series - 1) < 1e-6


@pytest.mark.parametrize("nu", [10, 20])
@pytest.mark.parametrize("lam", [-1, -4])
@pytest.mark.parametrize("kind", ["I", "D"])
def test_log_expansion_numerically(nu, lam, kind):
    U, V = olver_polynomials(4)
    l = log_expansion_coefficients((U if kind == "I" else V)[1:])
    wf = Fraction(1 / math.sqrt(1 - lam))
    series = sum(float(l[j](wf)) / nu ** (j + 1) for j in range(4))
    assert abs(olver_log_remainder(nu, math.sqrt(-lam), kind) - series) < 5e-6


def test_log_expansion_examples():
    U, _ = olver_polynomials(2)
    assert log_expansion_coefficients([U[1]]) == [U[1]]
    c = WPoly.constant(Fraction(3, 7))
    assert log_expansion_coefficients([WPoly(), c])[1] == c
    assert log_expansion_coefficients([U[1], U[2]])[1] == U[2] - U[1] * U[1] * Fraction(1, 2)


@given(st.lists(st.fractions(-3, 3, max_denominator=10), min_size=1, max_size=6),
       st.floats(0.001, 0.05))
def test_log_expansion_matches_log1p(coeffs, t):
    a = [Poly.constant(c) for c in coeffs]
    l = log_expansion_coefficients(a)
    inner = sum(float(c) * t ** (j + 1) for j, c in enumerate(coeffs))
    approx = sum(float(lj[0]) * t ** (j + 1) for j, lj in enumerate(l))
    bound = 2 * (3 * t) ** (len(coeffs) + 1) / (1 - 3 * t)
    assert abs(math.log1p(inner) - approx) <= bound + 1e-15


def test_phi_examples():
    assert phi_polynomial(1, 3, 2) == WPoly({1: Fraction(-1, 2), 3: Fraction(1, 2)})
    for q in range(2):
        assert phi_polynomial(1, 3, q) == WPoly({1: -1, 3: 1})
    for p, q in [(3, 0), (3, 1), (5, 2)]:
        a2 = (q - p + 1) ** 2
        expected = (WPoly({0: a2, 2: -a2}) + WPoly({2: Fraction(-1, 2), 4: 2, 6: Fraction(-3, 2)}))
        assert phi_polynomial(2, p, q) == expected


def test_phi_two_displays():
    # a variant with -2w^4 circulates; it does not vanish at w=1, the recursion result does
    p, q = 3, 0
    a2 = (q - p + 1) ** 2
    other = WPoly({0: a2, 2: -a2}) + WPoly({2: Fraction(-1, 2), 4: -2, 6: Fraction(-3, 2)})
    assert other(Fraction(1)) != 0
    assert phi_polynomial(2, p, q)(Fraction(1)) == 0


@pytest.mark.parametrize("p", range(1, 7))
def test_phi_vanishes_at_one(p):
    for q in range(p):
        for j in range(1, 2 * p):
            phi = phi_polynomial(j, p, q)
            assert phi(Fraction(1)) == 0
            if j % 2:
                assert phi_residue(phi) == 0


@given(st.fractions(-6, 6, max_denominator=7), st.integers(1, 7))
def test_phi_alpha_vanishes_at_one(a, j):
    assert phi_polynomial_alpha(j, a)(Fraction(1)) == 0


@pytest.mark.parametrize("j", range(1, 6))
def test_alpha_recurrence(j):
    J = 2 * j - 1
    alphas = [Fraction(a) for a in range(J + 2)]
    polys = [phi_polynomial_alpha(J, a) for a in alphas]
    exps = sorted({e for poly in polys for e, _ in poly.items()})
    # interpolate each w-coefficient as a polynomial in alpha
    in_alpha = {e: interpolate(alphas, [poly[e] for poly in polys]) for e in exps}
    assert all(not c for e in exps for c in in_alpha[e][2 * j - 1:])
    top = WPoly({e: in_alpha[e][2 * j - 2] for e in exps})
    free = WPoly({e: in_alpha[e][0] for e in exps})
    assert top == WPoly.monomial(2 * j - 2) * phi_polynomial(1, 4, 0)
    assert free == 2 * phi_polynomial(J, 8, 7)


def test_alpha_free_part_is_symmetric():
    for j in range(1, 8):
        assert phi_polynomial_alpha(j, Fraction(5, 3)) == phi_polynomial_alpha(j, Fraction(-5, 3))


@pytest.mark.parametrize("p,q,j,expected", [
    (2, 1, 1, 1), (2, 1, 3, Fraction(2, 315)), (2, 0, 3, Fraction(214, 315)),
    (5, 4, 1, 1),
])
def test_finite_part_examples(p, q, j, expected):
    assert finite_part(j, p, q) == expected


def test_f_shorthand():
    assert F(3, 1, 2) == finite_part(5, 3, 1)


def test_finite_part_errors():
    with pytest.raises(ValueError):
        phi_finite_part(WPoly({1: 1}))
    with pytest.raises(ValueError):
        phi_finite_part(WPoly({0: 1, 1: -1}))
    with pytest.raises(ValueError):
        phi_polynomial(4, 2, 0)
    with pytest.raises(ValueError):
        phi_polynomial(1, 2, 2)


def test_finite_part_by_gamma_expansion():
    # Rz at s=0 of sum_k a_k Gamma(s+k+1/2)/(Gamma(k+1/2) s) via numerical differentiation
    phi = phi_polynomial(5, 3, 1)
    mpmath.mp.dps = 40

    def g(s):
        return sum(float(a) * mpmath.gamma(s + (e - 1) // 2 + mpmath.mpf(1) / 2) /
                   mpmath.gamma((e - 1) // 2 + mpmath.mpf(1) / 2) for e, a in phi.items())

    # g(0) = residue = 0, so the finite part is g'(0)
    assert abs(mpmath.diff(g, 0) - float(finite_part(5, 3, 1))) < 1e-12
