import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import dirichlet_residues, multiplicity_in_n_squared

from conetorsion.exact import NuPoly
from conetorsion.sphere import (INVARIANT_KEYS, HeatInvariants, bessel_order, coexact_eigenvalue,
                                coexact_multiplicity, coexact_spectrum, heat_coefficient_weights,
                                heat_coefficients, heat_residue_weights, heat_residues, residue_coefficient,
                                sphere_curvature, sphere_heat_invariants, sphere_volume, unit_eigenvalue,
                                zeta_u_at_zero, zeta_u_residues)


def test_spectrum_examples():
    spec = coexact_spectrum(2, 1, 1, 3)
    assert spec.entries[0] == (6, 4)
    assert [m for m, _ in spec] == [2 * n * (n + 2) for n in (1, 2, 3)]
    assert [v for _, v in spec] == [(n + 1) ** 2 for n in (1, 2, 3)]
    assert spec.orders == (2.0, 3.0, 4.0)
    assert coexact_eigenvalue(3, 2, 1) == 9
    nu = 2.5
    assert bessel_order(2, 1, 4, nu) == pytest.approx(nu * 5)


def test_spectrum_errors():
    with pytest.raises(ValueError):
        coexact_spectrum(2, 2)
    with pytest.raises(ValueError):
        coexact_spectrum(2, 0, 1, 0)


def test_functions_on_s3():
    # coexact 0-forms are the nonconstant functions: k(k+2), multiplicity (k+1)^2
    for n in range(1, 10):
        assert unit_eigenvalue(2, 0, n) == n * (n + 2)
        assert coexact_multiplicity(2, 0, n) == (n + 1) ** 2


def test_hodge_folding():
    # on S^{2p-1} coexact q-forms and coexact (2p-2-q)-forms are paired by the Hodge star
    for p in range(2, 6):
        for q in range(p - 1):
            for n in range(1, 6):
                assert coexact_multiplicity(p, q, n) == coexact_multiplicity(p, 2 * p - 2 - q, n)


@given(st.integers(1, 8), st.data())
def test_bessel_order_is_shifted_integer(p, data):
    q = data.draw(st.integers(0, p - 1))
    n = data.draw(st.integers(1, 50))
    # at nu = 1 the order is exactly n + p - 1
    assert bessel_order(p, q, n) == n + p - 1


@pytest.mark.parametrize("p", range(1, 6))
def test_weyl_growth(p):
    for q in range(p):
        a, b = coexact_multiplicity(p, q, 10**5), coexact_multiplicity(p, q, 2 * 10**5)
        assert math.log(b / a) / math.log(2) == pytest.approx(2 * p - 2, abs=0.01)


def test_residue_examples():
    r = zeta_u_residues(2, 1)
    assert r[3] == NuPoly({3: 2}) and r[1] == NuPoly({1: -2})
    assert zeta_u_residues(1, 0)[1] == NuPoly({1: 2})


def test_residue_table_shape():
    for p in range(1, 9):
        for q in range(p):
            t = zeta_u_residues(p, q)
            assert sorted(t.entries) == list(range(1, 2 * p, 2))
            for s, poly in t.entries.items():
                assert all(e >= s and e <= 2 * p - 1 for e, _ in poly.items())


@pytest.mark.parametrize("p", range(1, 9))
def test_residues_vs_dirichlet_oracle(p):
    for q in range(p):
        oracle = dirichlet_residues(p, q)
        table = zeta_u_residues(p, q)
        assert all(oracle[s] == table[s] for s in oracle)


@pytest.mark.parametrize("p", range(2, 9))
def test_top_degree_special_form(p):
    # the q = p-1 shortcut and the general double sum agree
    table = zeta_u_residues(p, p - 1)
    for k in range(p):
        assert table.coefficient(k, 0) == residue_coefficient(p, p - 1, k, 0)
        assert all(residue_coefficient(p, p - 1, k, t) == 0 for t in range(1, p - k))


@pytest.mark.parametrize("p,q", [(2, 0), (3, 0), (3, 1)])
def test_oracle_expansion_numerically(p, q):
    # the binomial expansion behind the residue oracle, summed with Hurwitz zetas, against a direct sum
    import mpmath
    mpmath.mp.dps = 30
    nu, s = mpmath.mpf("1.7"), mpmath.mpf("7.5")
    a2 = (q - p + 1) ** 2
    direct = mpmath.nsum(lambda n: coexact_multiplicity(p, q, int(n)) *
                         (nu ** 2 * unit_eigenvalue(p, q, int(n)) + a2) ** (-s / 2), [1, mpmath.inf])
    b = multiplicity_in_n_squared(p, q)
    shift = a2 * (1 / nu ** 2 - 1)
    series = nu ** (-s) * sum(float(bt) * mpmath.binomial(-s / 2, u) * shift ** u *
                              mpmath.zeta(s - 2 * t + 2 * u, p)
                              for t, bt in enumerate(b) for u in range(40))
    assert float(direct) == pytest.approx(float(series), rel=1e-12)


@pytest.mark.parametrize("p", range(1, 9))
def test_zeta_at_zero(p):
    for q in range(p):
        assert zeta_u_at_zero(p, q) == (-1) ** (q + 1)


@pytest.mark.parametrize("p", range(1, 9))
def test_zeta_at_zero_oracle(p):
    # at nu = 1 the orders are N = n + p - 1, so zeta(s) = sum_t b_t (zeta_R(s - 2t) - sum_{N<p} N^{2t-s})
    for q in range(p):
        b = multiplicity_in_n_squared(p, q)
        value = sum(bt * ((Fraction(-1, 2) if t == 0 else 0) - sum(Fraction(N) ** (2 * t) for N in range(1, p)))
                    for t, bt in enumerate(b))
        assert value == (-1) ** (q + 1)


# heat invariants -------------------------------------------------------------

def test_heat_ratios_m5():
    w = {q: heat_coefficient_weights(5, q) for q in range(3)}
    assert w[1][0]["vol"] / w[0][0]["vol"] == 5
    assert w[2][0]["vol"] / w[0][0]["vol"] == 10
    assert w[1][2]["int_tau"] / w[0][2]["int_tau"] == -1
    assert w[2][2]["int_tau"] / w[0][2]["int_tau"] == -8
    r = {q: heat_residue_weights(5, q) for q in range(3)}
    assert r[1][Fraction(5, 2)]["vol"] == 5 * r[0][Fraction(5, 2)]["vol"]
    assert r[2][Fraction(3, 2)]["int_tau"] == -8 * r[0][Fraction(3, 2)]["int_tau"]


def test_heat_residue_m3():
    inv = HeatInvariants(vol=2.0, int_tau=3.0)
    r = heat_residues(3, 0, inv)
    assert r[Fraction(1, 2)] == pytest.approx(3.0 / (48 * math.pi ** 2))
    e = heat_coefficients(3, 0, inv)
    assert r[Fraction(3, 2)] == pytest.approx(e[0] / math.gamma(1.5))


def test_heat_errors():
    with pytest.raises(ValueError):
        heat_coefficient_weights(7, 0)
    with pytest.raises(ValueError):
        heat_coefficient_weights(3, 4)
    with pytest.raises(ValueError):
        HeatInvariants.from_dict({"vol": 1.0})
    with pytest.raises(ValueError):
        HeatInvariants.from_dict({**{k: 0.0 for k in INVARIANT_KEYS}, "vol": 1.0, "extra": 1})
    with pytest.raises(ValueError):
        HeatInvariants(vol=0.0)


def _curvature_tensor(m, radius):
    k = 1.0 / radius ** 2
    g = np.eye(m)
    return k * (np.einsum("ik,jl->ijkl", g, g) - np.einsum("il,jk->ijkl", g, g))


@pytest.mark.parametrize("m", [3, 5, 7])
@pytest.mark.parametrize("radius", [0.4, 1.0, 2.3])
def test_curvature_vs_tensor(m, radius):
    R = _curvature_tensor(m, radius)
    ric = np.einsum("kikj->ij", R)
    c = sphere_curvature(m, radius)
    assert c["tau"] == pytest.approx(np.trace(ric))
    assert c["ric_sq"] == pytest.approx(np.sum(ric * ric))
    assert c["riem_sq"] == pytest.approx(np.sum(R * R))


def test_sphere_volume():
    assert sphere_volume(1) == pytest.approx(2 * math.pi)
    assert sphere_volume(3) == pytest.approx(2 * math.pi ** 2)
    assert sphere_volume(5, 2.0) == pytest.approx(math.pi ** 3 * 32)


def _form_heat_trace(p, q, t):
    """Heat trace of the q-form Laplacian on the unit S^{2p-1} from its exact spectrum."""
    m = 2 * p - 1
    n = np.arange(1, int(math.sqrt(60 / t)) + 10)
    total = 1.0 if q in (0, m) else 0.0
    for d in (q, q - 1):
        if 0 <= d <= m - 1:
            mult = np.array([coexact_multiplicity(p, d, int(k)) for k in n], dtype=float)
            lam = np.array([unit_eigenvalue(p, d, int(k)) for k in n], dtype=float)
            total += float(np.sum(mult * np.exp(-t * lam)))
    return total


@pytest.mark.parametrize("m,q", [(3, 0), (3, 1), (5, 0), (5, 1), (5, 2)])
def test_heat_coefficients_vs_spectrum(m, q):
    p = (m + 1) // 2
    e = heat_coefficients(m, q, sphere_heat_invariants(m))
    for t in (0.002, 0.004):
        expansion = sum(c * t ** ((h - m) / 2) for h, c in e.items())
        assert _form_heat_trace(p, q, t) == pytest.approx(expansion, rel=1e-5)
