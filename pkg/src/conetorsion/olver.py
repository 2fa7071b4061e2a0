"""Olver polynomials, log-series coefficients and the phi polynomials.

Everything here is a polynomial in w = (1 - lambda)^(-1/2) with exact rational
coefficients. For the modified Bessel functions at large order,

    I_nu(nu z)   ~ e^{nu eta} / (sqrt(2 pi nu) (1+z^2)^{1/4}) * sum_j U_j(w) / nu^j
    I'_nu(nu z)  ~ (1+z^2)^{1/4} e^{nu eta} / (sqrt(2 pi nu) z) * sum_j V_j(w) / nu^j

with w = 1/sqrt(1+z^2) and lambda = -z^2.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .exact import Poly, as_rational, odd_harmonic

P_MAX_DEFAULT = 8


class WPoly(Poly):
    __slots__ = ()
    var = "w"


W = WPoly.monomial(1)
ONE = WPoly.constant(1)
_ONE_MINUS_W2 = WPoly({0: 1, 2: -1})

_lock = threading.Lock()
_U: List[WPoly] = [ONE]
_V: List[WPoly] = [ONE]


def _extend(j_max: int):
    with _lock:
        while len(_U) <= j_max:
            prev = _U[-1]
            dprev = prev.derivative()
            w2 = WPoly({2: Fraction(1, 2)}) * _ONE_MINUS_W2
            u = w2 * dprev + (WPoly({0: Fraction(1, 8), 2: Fraction(-5, 8)}) * prev).integral()
            v = u - WPoly({1: Fraction(1, 2)}) * _ONE_MINUS_W2 * prev - WPoly({2: 1}) * _ONE_MINUS_W2 * dprev
            _U.append(u)
            _V.append(v)


def olver_polynomials(j_max: int):
    """Return ([U_0..U_jmax], [V_0..V_jmax])."""
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    _extend(j_max)
    return list(_U[: j_max + 1]), list(_V[: j_max + 1])


def log_expansion_coefficients(a: Sequence[Poly]) -> List[Poly]:
    """Coefficients l_j of log(1 + sum_j a_j t^j) = sum_j l_j t^j.

    ``a[0]`` is a_1. Uses l_j = a_j - sum_{k<j} (j-k)/j a_k l_{j-k}.
    """
    l: List[Poly] = []
    for j in range(1, len(a) + 1):
        acc = a[j - 1]
        for k in range(1, j):
            acc = acc - a[k - 1] * l[j - k - 1] * Fraction(j - k, j)
        l.append(acc)
    return l


def _w_series(j_max: int, alpha):
    """a_j for the expansion of alpha I_nu + nu z I'_nu, normalized like V."""
    U, V = olver_polynomials(j_max)
    aw = W * as_rational(alpha)
    return [V[j] + aw * U[j - 1] for j in range(1, j_max + 1)]


_phi_cache = {}


def _phi_from_alpha(alpha, j_max: int, top: bool):
    U, V = olver_polynomials(j_max)
    l = log_expansion_coefficients(U[1:])
    if top:
        ldot = log_expansion_coefficients(V[1:])
        return [ldot[j] - l[j] for j in range(j_max)]
    alpha = as_rational(alpha)
    lp = log_expansion_coefficients(_w_series(j_max, alpha))
    lm = log_expansion_coefficients(_w_series(j_max, -alpha))
    table = []
    for j in range(1, j_max + 1):
        phi = lp[j - 1] + lm[j - 1] - 2 * l[j - 1]
        if j % 2 == 0:
            # constant from log(1 - alpha^2/nu^2) dropped out of the product
            phi = phi + alpha ** j / (j // 2)
        table.append(phi)
    return table


def phi_polynomial_alpha(j: int, alpha) -> WPoly:
    """phi_{j,q} for q <= p-2 as a function of alpha_q alone."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return _phi_from_alpha(alpha, j, False)[j - 1]


def _phi_table(p: int, q: int, j_max: int):
    key = (p, q)
    hit = _phi_cache.get(key)
    if hit is not None and len(hit) >= j_max:
        return hit
    table = _phi_from_alpha(q - p + 1, j_max, q == p - 1)
    for j, phi in enumerate(table, start=1):
        if phi(Fraction(1)) != 0:
            raise ArithmeticError(f"phi_{j},{q} (p={p}) does not vanish at w=1")
    _phi_cache[key] = table
    return table


def phi_polynomial(j: int, p: int, q: int) -> WPoly:
    """phi_{j,q}(w) for the cone over S^{2p-1}; alpha_q = q - p + 1."""
    if p < 1 or not 0 <= q <= p - 1:
        raise ValueError(f"need 0 <= q <= p-1, got p={p}, q={q}")
    if not 1 <= j <= 2 * p - 1:
        raise ValueError(f"need 1 <= j <= 2p-1, got j={j}")
    return _phi_table(p, q, 2 * p - 1)[j - 1]


def phi_residue(phi: Poly) -> Fraction:
    """Residue at s=0 of the Mellin-type transform of phi (sum of odd coefficients)."""
    return sum((v for e, v in phi.items() if e % 2 == 1), Fraction(0))


def phi_finite_part(phi: Poly) -> Fraction:
    """Finite part at s=0 of sum_k a_k Gamma(s+k+1/2)/(Gamma(k+1/2) s).

    Input must be odd, phi = sum_k a_k w^(2k+1), with sum_k a_k = 0.
    """
    value = Fraction(0)
    for e, a in phi.items():
        if e % 2 == 0:
            raise ValueError("finite part needs an odd polynomial in w")
        value += a * odd_harmonic((e - 1) // 2)
    if phi_residue(phi) != 0:
        raise ValueError("residue companion does not vanish; finite part is not rational")
    return 2 * value


@dataclass(frozen=True)
class PhiFinitePart:
    j: int
    q: int
    p: int
    value: Fraction

    @classmethod
    def compute(cls, j: int, p: int, q: int) -> "PhiFinitePart":
        return cls(j, q, p, phi_finite_part(phi_polynomial(j, p, q)))


def finite_part(j: int, p: int, q: int) -> Fraction:
    """Rz Phi_{j,q} for odd j."""
    return PhiFinitePart.compute(j, p, q).value


def F(p: int, q: int, k: int) -> Fraction:
    """F(q,k) = Rz Phi_{2k+1,q}."""
    return finite_part(2 * k + 1, p, q)


def finite_part_table(p_max: int = P_MAX_DEFAULT):
    rows = []
    for p in range(1, p_max + 1):
        for q in range(p):
            for j in range(1, 2 * p, 2):
                rows.append(PhiFinitePart.compute(j, p, q))
    return rows
