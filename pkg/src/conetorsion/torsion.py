"""Analytic torsion of the finite metric cone C_l W over an odd-dimensional section.

log T = regular + singular. The singular term is boundary-local; for spheres it
is an exact odd polynomial in x = sin(alpha) and coincides with the anomaly
boundary term A_BM, which is the content of the Cheeger-Mueller comparison
checked here.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Optional, Tuple

from .exact import NuPoly, binom_rational, double_factorial
from .olver import F
from .sphere import (HeatInvariants, alpha, heat_residue_weights, residue_coefficient,
                     sphere_volume, zeta_u_residues, coexact_multiplicity)


# exact sphere formulas -----------------------------------------------------

def N_coefficient(p: int, j: int, k: int) -> Fraction:
    pref = Fraction(factorial(2 * p - 1), 4 ** p * factorial(p - 1))
    pref /= factorial(p - 1 - k) * (2 * k + 1)
    return pref * Fraction((-1) ** (k - j) * 2 ** (j + 1), factorial(k - j) * double_factorial(2 * j + 1))


def M_coefficient(p: int, j: int, k: int) -> Fraction:
    total = Fraction(0)
    for q in range(p):
        total += (-1) ** q * F(p, q, j) * residue_coefficient(p, q, j, k - j)
    return total / 4


def mn_coefficients(p: int, j: int, k: int) -> Tuple[Fraction, Fraction]:
    if not 0 <= j <= k <= p - 1:
        raise ValueError(f"need 0 <= j <= k <= p-1, got p={p}, j={j}, k={k}")
    return M_coefficient(p, j, k), N_coefficient(p, j, k)


@lru_cache(maxsize=None)
def anomaly_sphere(p: int) -> NuPoly:
    """A_BM of the boundary of C_l S^{2p-1}_{sin alpha}, as a polynomial in sin(alpha)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return NuPoly({2 * k + 1: sum((N_coefficient(p, j, k) for j in range(k + 1)), Fraction(0))
                   for k in range(p)})


@lru_cache(maxsize=None)
def singular_term_sphere(p: int) -> NuPoly:
    """1/4 sum_q (-1)^q sum_k Rz Phi_{2k+1,q} Res_{s=2k+1} zeta(s, U_q)."""
    if not 1 <= p <= 8:
        raise ValueError("p must be in 1..8")
    total = NuPoly()
    for q in range(p):
        res = zeta_u_residues(p, q)
        for k in range(p):
            total = total + res[2 * k + 1] * ((-1) ** q * F(p, q, k))
    # NuPoly construction already rejects even powers of x
    return total * Fraction(1, 4)


def cone_volume(p: int, alpha_: float, l: float) -> float:
    """Vol(C_l S^{2p-1}_{sin alpha}) = l^{2p}/(2p) Vol(S^{2p-1}_{sin alpha})."""
    _check_domain(alpha_, l)
    m = 2 * p - 1
    return l ** (m + 1) / (m + 1) * sphere_volume(m, math.sin(alpha_))


def regular_term_sphere(p: int, alpha_: float, l: float) -> float:
    return 0.5 * math.log(cone_volume(p, alpha_, l))


def _check_domain(alpha_, l):
    if not l > 0:
        raise ValueError("l must be positive")
    s = math.sin(alpha_)
    if not 0 < s <= 1 + 1e-15:
        raise ValueError("need 0 < sin(alpha) <= 1")


# reports -------------------------------------------------------------------

REPORT_FIELDS = ("regular", "singular", "anomaly", "total", "reidemeister", "cheeger_muller_gap")


@dataclass(frozen=True)
class TorsionReport:
    regular: float
    singular: float
    anomaly: float
    total: float
    reidemeister: float
    cheeger_muller_gap: float
    metadata: dict = field(default_factory=dict, compare=False)

    @classmethod
    def assemble(cls, regular, singular, anomaly, reidemeister, metadata=None):
        total = regular + singular
        return cls(regular, singular, anomaly, total, reidemeister,
                   total - (reidemeister + anomaly), dict(metadata or {}))

    @property
    def relative_total(self) -> Optional[float]:
        """log T for relative boundary conditions, log T_abs = (-1)^m log T_rel."""
        m = self.metadata.get("m")
        if m is None:
            return None
        return (-1) ** m * self.total

    def to_dict(self) -> dict:
        d = asdict(self)
        d["relative_total"] = self.relative_total
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TorsionReport":
        return cls(*(float(d[k]) for k in REPORT_FIELDS), metadata=dict(d.get("metadata", {})))


def topological_term(p: int, betti, l: float) -> float:
    return 0.5 * sum((-1) ** (q + 1) * r * math.log(2 * (p - q) / l) for q, r in enumerate(betti))


def torsion_sphere_report(p: int, alpha_: float, l: float) -> TorsionReport:
    _check_domain(alpha_, l)
    m = 2 * p - 1
    x = math.sin(alpha_)
    betti = [1] + [0] * (p - 1)
    # log T(S^m_{sin alpha}, l^2 g) = log Vol(S^m_{l sin alpha})
    regular = topological_term(p, betti, l) + 0.5 * math.log(sphere_volume(m, l * x))
    singular = singular_term_sphere(p)(x)
    anomaly = anomaly_sphere(p)(x)
    reidemeister = 0.5 * math.log(cone_volume(p, alpha_, l))
    meta = {"p": p, "m": m, "alpha": alpha_, "l": l, "provenance": "sphere-exact"}
    return TorsionReport.assemble(regular, singular, anomaly, reidemeister, meta)


# general sections ----------------------------------------------------------

@dataclass(frozen=True)
class SectionData:
    """Input for the general torsion formula.

    cex_residues[(q, j)] is the residue of the coexact zeta function of the
    section q-form Laplacian (metric g) at s = j + 1/2, for q, j in 0..p-1.
    """
    p: int
    betti: tuple
    log_section_torsion: float
    cex_residues: Dict[Tuple[int, int], float]
    l: float = 1.0

    def __post_init__(self):
        if len(self.betti) != self.p:
            raise ValueError("betti must list r_0..r_{p-1}")
        if not self.l > 0:
            raise ValueError("l must be positive")
        missing = [(q, j) for q in range(self.p) for j in range(self.p) if (q, j) not in self.cex_residues]
        if missing:
            raise KeyError(f"missing residues for (q, j) in {missing}")


@lru_cache(maxsize=None)
def singular_weights(p: int) -> Dict[Tuple[int, int], Fraction]:
    """w[(q, j)] with S = sum w[(q, j)] Res_{s=j+1/2} zeta_cex(s, Delta_q)."""
    out = {}
    for q in range(p):
        a2 = Fraction(alpha(p, q) ** 2)
        for j in range(p):
            w = Fraction(0)
            for k in range(j + 1):
                w += F(p, q, k) * binom_rational(Fraction(-1, 2) - k, j - k) * a2 ** (j - k)
            out[(q, j)] = (-1) ** q * w / 2
    return out


def singular_term_from_residues(p: int, cex_residues) -> float:
    return sum(float(w) * float(cex_residues[key]) for key, w in singular_weights(p).items())


def cex_from_full(p: int, full) -> Dict[Tuple[int, int], float]:
    """Coexact residues from residues of the full form Laplacians, q <= p-1."""
    return {(q, j): sum((-1) ** (q + l) * full[(l, j)] for l in range(q + 1))
            for q in range(p) for j in range(p)}


def torsion_from_section_data(data: SectionData, anomaly: Optional[float] = None,
                              reidemeister: Optional[float] = None) -> TorsionReport:
    p = data.p
    regular = topological_term(p, data.betti, data.l) + 0.5 * data.log_section_torsion
    singular = singular_term_from_residues(p, data.cex_residues)
    meta = {"p": p, "m": 2 * p - 1, "l": data.l, "provenance": "section-data"}
    nan = float("nan")
    return TorsionReport.assemble(regular, singular, nan if anomaly is None else anomaly,
                                  nan if reidemeister is None else reidemeister, meta)


def sphere_cex_residue_poly(p: int, q: int, j: int) -> NuPoly:
    """Res_{s=j+1/2} zeta_cex(s, Delta_q) on S^{2p-1}_x as a polynomial in x."""
    a2 = Fraction(alpha(p, q) ** 2)
    # multiplicity as a polynomial in N^2 with N = n + p - 1
    coeffs = [Fraction(0)] * p
    coeffs[0] = Fraction(1)
    for i in range(1, p + 1):
        if i == q + 1:
            continue
        r = -(p - i) ** 2
        coeffs = [r * coeffs[0]] + [coeffs[t - 1] + r * coeffs[t] for t in range(1, p)]
    pref = Fraction(2, factorial(q) * factorial(2 * p - q - 2))
    b = [pref * c for c in coeffs]
    total = Fraction(0)
    for t in range(p - j):
        total += binom_rational(-(Fraction(2 * j + 1, 2)), t) * (-a2) ** t * b[j + t]
    return NuPoly({2 * j + 1: total / 2})


def sphere_section_data(p: int, alpha_: float, l: float) -> SectionData:
    x = math.sin(alpha_)
    m = 2 * p - 1
    res = {(q, j): sphere_cex_residue_poly(p, q, j)(x) for q in range(p) for j in range(p)}
    return SectionData(p, tuple([1] + [0] * (p - 1)), math.log(sphere_volume(m, l * x)), res, l)


# low-dimensional sections (m = 3, 5) ---------------------------------------

def _heat_ratio(m: int, q: int, s: Fraction) -> Optional[Fraction]:
    """Res_s zeta(Delta_q) / Res_s zeta(Delta_0) if it is a pure number."""
    w = heat_residue_weights(m, q)[s]
    w0 = heat_residue_weights(m, 0)[s]
    if len(w) != 1:
        return None
    (key, v), = w.items()
    return v / w0[key]


@lru_cache(maxsize=None)
def singular_coefficients_lowdim(m: int) -> Dict[Tuple[int, Fraction], Fraction]:
    """Exact coefficients c[(q, s)] with S = sum c Res_s zeta(s, Delta_q).

    Poles whose heat coefficient is a single invariant are folded onto q = 0.
    """
    if m not in (3, 5):
        raise ValueError("only m = 3 and m = 5 are supported")
    p = (m + 1) // 2
    full = {}
    for (q, j), w in singular_weights(p).items():
        s = Fraction(2 * j + 1, 2)
        for l in range(q + 1):
            key = (l, s)
            full[key] = full.get(key, 0) + (-1) ** (q + l) * w
    out = {}
    for (l, s), c in full.items():
        r = _heat_ratio(m, l, s)
        key = (0, s) if r is not None else (l, s)
        out[key] = out.get(key, 0) + c * (r if r is not None else 1)
    return {k: v for k, v in sorted(out.items(), key=lambda kv: (kv[0][1], kv[0][0])) if v}


def singular_term_lowdim(m: int, inv: HeatInvariants) -> float:
    coeffs = singular_coefficients_lowdim(m)
    d = inv.as_dict()
    pi_pow = math.pi ** (-(m + 1) / 2)
    total = 0.0
    for (q, s), c in coeffs.items():
        w = heat_residue_weights(m, q)[s]
        total += float(c) * pi_pow * sum(float(v) * d[k] for k, v in w.items())
    return total


# closed forms of the anomaly boundary term
_ANOMALY = {
    3: (2, {"int_tau": Fraction(1, 16), "vol": Fraction(-1, 24)}),
    5: (3, {"vol": Fraction(3, 80), "int_tau": Fraction(-1, 96), "int_riem_sq": Fraction(1, 128),
            "int_ric_sq": Fraction(-1, 32), "int_tau_sq": Fraction(1, 128)}),
}


def anomaly_lowdim(m: int, inv: HeatInvariants) -> float:
    if m not in _ANOMALY:
        raise ValueError("only m = 3 and m = 5 are supported")
    pi_power, coeffs = _ANOMALY[m]
    d = inv.as_dict()
    return sum(float(c) * d[k] for k, c in coeffs.items()) / math.pi ** pi_power


def torsion_lowdim_report(m: int, inv: HeatInvariants) -> TorsionReport:
    """Boundary-local part only: regular and Reidemeister terms need the section's torsion."""
    s = singular_term_lowdim(m, inv)
    a = anomaly_lowdim(m, inv)
    nan = float("nan")
    return TorsionReport(nan, s, a, nan, nan, nan, {"m": m, "provenance": "heat-invariants"})
