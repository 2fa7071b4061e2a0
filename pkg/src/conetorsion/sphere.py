"""Spectral data of round odd spheres and heat-coefficient residues.

The section is S^{2p-1} of radius 1/nu. Coexact q-forms (q <= p-1) have
eigenvalues nu^2 (n+q)(n+2p-q-2), n >= 1, and the Bessel orders attached to
them are mu = sqrt(lambda + alpha_q^2) with alpha_q = q - p + 1. Degrees above
p-1 are obtained from Hodge duality on the sphere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple

from .exact import NuPoly, as_rational, binom_rational, d_vector, double_factorial


def alpha(p: int, q: int) -> int:
    return q - p + 1


def _check(p, q):
    if p < 1 or not 0 <= q <= p - 1:
        raise ValueError(f"need 0 <= q <= p-1, got p={p}, q={q}")


def _fold(p: int, q: int) -> int:
    """Coexact degree q on S^{2p-1} mapped to its Hodge dual partner <= p-1."""
    m = 2 * p - 1
    if not 0 <= q <= m - 1:
        raise ValueError(f"no coexact {q}-forms on S^{m}")
    return q if q <= p - 1 else m - 1 - q


def coexact_multiplicity(p: int, q: int, n: int) -> int:
    q = _fold(p, q)
    prod = 1
    for j in range(1, p + 1):
        if j != q + 1:
            prod *= (n - 1 + j) * (2 * p + n - 1 - j)
    num = 2 * prod
    den = factorial(q) * factorial(2 * p - q - 2)
    if num % den:
        raise ArithmeticError("non-integral multiplicity")
    return num // den


def unit_eigenvalue(p: int, q: int, n: int) -> int:
    """Coexact eigenvalue on the unit sphere."""
    q = _fold(p, q)
    return (n + q) * (n + 2 * p - q - 2)


def coexact_eigenvalue(p: int, q: int, n: int, nu=1):
    return nu * nu * unit_eigenvalue(p, q, n)


def bessel_order(p: int, q: int, n: int, nu=1.0) -> float:
    """mu_{q,n} = sqrt(lambda_{q,n} + alpha_q^2); alpha is the unfolded one."""
    a = alpha(p, q)
    return math.sqrt(float(nu) ** 2 * unit_eigenvalue(p, q, n) + a * a)


@dataclass(frozen=True)
class SpectralSequence:
    entries: tuple  # (multiplicity, value) pairs sorted by value
    provenance: str = "sphere-exact"
    orders: tuple = ()

    def __post_init__(self):
        prev = None
        for mult, val in self.entries:
            if mult < 1 or not val > 0:
                raise ValueError("bad spectral entry")
            if prev is not None and val < prev:
                raise ValueError("entries must be sorted by value")
            prev = val

    def __iter__(self) -> Iterator[Tuple[int, float]]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def total_multiplicity(self) -> int:
        return sum(m for m, _ in self.entries)


def coexact_spectrum(p: int, q: int, nu=1, n_max: int = 10) -> SpectralSequence:
    _check(p, q)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rows = []
    orders = []
    for n in range(1, n_max + 1):
        rows.append((coexact_multiplicity(p, q, n), coexact_eigenvalue(p, q, n, nu)))
        orders.append(bessel_order(p, q, n, nu))
    return SpectralSequence(tuple(rows), "sphere-exact", tuple(orders))


@dataclass(frozen=True)
class ResidueTable:
    p: int
    q: int
    entries: Dict[int, NuPoly] = field(hash=False)

    def __post_init__(self):
        if sorted(self.entries) != list(range(1, 2 * self.p, 2)):
            raise ValueError("residue table needs poles s = 1, 3, ..., 2p-1")

    def __getitem__(self, s: int) -> NuPoly:
        return self.entries[s]

    def coefficient(self, k: int, t: int) -> Fraction:
        """Coefficient of x^{2k+1+2t} in Res_{s=2k+1}."""
        return self.entries[2 * k + 1][2 * k + 1 + 2 * t]


def residue_coefficient(p: int, q: int, k: int, t: int) -> Fraction:
    """D(q,k,t): coefficient of x^{2k+1+2t} in Res_{s=2k+1} zeta(s, U_q)."""
    d = d_vector(p, q)
    a2 = Fraction(alpha(p, q) ** 2)
    inner = Fraction(0)
    for j in range(k + t, p):
        inner += d.e(p - 1 - j) * binom_rational(Fraction(-1, 2), j - k - t) * a2 ** (j - k)
    pref = Fraction(2, factorial(q) * factorial(2 * p - q - 2))
    return pref * binom_rational(Fraction(-(2 * k + 1), 2), t) * inner


def zeta_u_residues(p: int, q: int) -> ResidueTable:
    """Residues of zeta(s, U_q) = sum_n m_{cex,q,n} mu_{q,n}^{-s} at s = 2k+1."""
    _check(p, q)
    entries = {}
    for k in range(p):
        if q == p - 1:
            d = d_vector(p, q)
            entries[2 * k + 1] = NuPoly({2 * k + 1: Fraction(2, factorial(p - 1) ** 2) * d.e(p - 1 - k)})
        else:
            entries[2 * k + 1] = NuPoly({2 * k + 1 + 2 * t: residue_coefficient(p, q, k, t)
                                         for t in range(p - k)})
    return ResidueTable(p, q, entries)


def _zeta_tc_at_zero(t: int, c: int) -> Fraction:
    """Value at s=0 of sum_{n>=1} (n(n+2t))^{c-s}."""
    if c == 0:
        return Fraction(-1, 2) - t
    total = Fraction((-1) ** (c + 1) * t ** (2 * c), 2)
    for n in range(1, t):
        total -= (n * n - t * t) ** c
    return total


def zeta_u_at_zero(p: int, q: int) -> Fraction:
    """zeta(0, U_q) for the unit sphere; equals (-1)^{q+1}."""
    _check(p, q)
    d = d_vector(p, q)
    t = -alpha(p, q)
    pref = Fraction(2, factorial(q) * factorial(2 * p - q - 2))
    total = Fraction(0)
    for c in range(p):
        e = d.e(p - 1 - c)
        # shifted index n -> n - q; drop the q leading terms where m vanishes
        part = _zeta_tc_at_zero(t, c)
        for n in range(1, q + 1):
            part -= Fraction(n * (n + 2 * t)) ** c
        total += e * part
    value = pref * total
    if value != (-1) ** (q + 1):
        raise ArithmeticError(f"zeta(0,U_{q}) on S^{2 * p - 1} came out {value}")
    return value


# heat coefficients ---------------------------------------------------------

INVARIANT_KEYS = ("vol", "int_tau", "int_tau_sq", "int_ric_sq", "int_riem_sq")


@dataclass(frozen=True)
class HeatInvariants:
    vol: float
    int_tau: float = 0.0
    int_tau_sq: float = 0.0
    int_ric_sq: float = 0.0
    int_riem_sq: float = 0.0

    def __post_init__(self):
        for k in INVARIANT_KEYS:
            v = getattr(self, k)
            if not math.isfinite(v):
                raise ValueError(f"{k} must be finite")
        if not self.vol > 0:
            raise ValueError("vol must be positive")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in INVARIANT_KEYS}

    @classmethod
    def from_dict(cls, d: dict) -> "HeatInvariants":
        missing = [k for k in INVARIANT_KEYS if k not in d]
        if missing:
            raise ValueError(f"missing heat invariants: {missing}")
        extra = set(d) - set(INVARIANT_KEYS)
        if extra:
            raise ValueError(f"unknown keys: {sorted(extra)}")
        return cls(**{k: float(d[k]) for k in INVARIANT_KEYS})


def _b(n, k):
    return comb(n, k) if n >= 0 and 0 <= k <= n else 0


def heat_coefficient_weights(m: int, q: int) -> Dict[int, Dict[str, Fraction]]:
    """e_{q,h} = (4 pi)^{-m/2} * sum_key weight[key] * invariant[key], h = 0, 2, 4."""
    if m not in (3, 5):
        raise ValueError("only m = 3 and m = 5 are supported")
    if not 0 <= q <= m:
        raise ValueError("q out of range")
    b0, b1, b2 = _b(m, q), _b(m - 2, q - 1), _b(m - 4, q - 2)
    return {
        0: {"vol": Fraction(b0)},
        2: {"int_tau": Fraction(b0 - 6 * b1, 6)},
        4: {
            "int_tau_sq": Fraction(5 * b0 - 60 * b1 + 180 * b2, 360),
            "int_ric_sq": Fraction(-2 * b0 + 180 * b1 - 720 * b2, 360),
            "int_riem_sq": Fraction(2 * b0 - 30 * b1 + 180 * b2, 360),
        },
    }


def _gamma_half_over_sqrt_pi(s: Fraction) -> Fraction:
    # Gamma(k + 1/2) / sqrt(pi) = (2k-1)!! / 2^k
    k = int(s - Fraction(1, 2))
    return Fraction(double_factorial(2 * k - 1), 2 ** k)


def heat_residue_weights(m: int, q: int) -> Dict[Fraction, Dict[str, Fraction]]:
    """Exact residue weights: Res_{s} zeta(s, Delta_q) = pi^{-(m+1)/2} sum w[key] inv[key].

    Only positive half-integer poles s = (m-h)/2 are listed.
    """
    out = {}
    for h, wts in heat_coefficient_weights(m, q).items():
        s = Fraction(m - h, 2)
        if s <= 0:
            continue
        scale = 1 / (2 ** m * _gamma_half_over_sqrt_pi(s))
        out[s] = {k: v * scale for k, v in wts.items()}
    return out


def heat_coefficients(m: int, q: int, inv: HeatInvariants) -> Dict[int, float]:
    pref = (4 * math.pi) ** (-m / 2)
    d = inv.as_dict()
    return {h: pref * sum(float(w) * d[k] for k, w in wts.items())
            for h, wts in heat_coefficient_weights(m, q).items()}


def heat_residues(m: int, q: int, inv: HeatInvariants) -> Dict[Fraction, float]:
    pi_pow = math.pi ** (-(m + 1) / 2)
    d = inv.as_dict()
    return {s: pi_pow * sum(float(w) * d[k] for k, w in wts.items())
            for s, wts in heat_residue_weights(m, q).items()}


def sphere_curvature(m: int, radius=1.0) -> dict:
    """Pointwise curvature scalars of the round m-sphere of the given radius."""
    k = 1.0 / float(radius) ** 2
    return {
        "tau": m * (m - 1) * k,
        "ric_sq": m * (m - 1) ** 2 * k * k,
        "riem_sq": 2 * m * (m - 1) * k * k,
    }


def sphere_volume(m: int, radius=1.0) -> float:
    return 2 * math.pi ** ((m + 1) / 2) * float(radius) ** m / math.gamma((m + 1) / 2)


def sphere_heat_invariants(m: int, radius=1.0) -> HeatInvariants:
    vol = sphere_volume(m, radius)
    c = sphere_curvature(m, radius)
    return HeatInvariants(vol=vol, int_tau=c["tau"] * vol, int_tau_sq=c["tau"] ** 2 * vol,
                          int_ric_sq=c["ric_sq"] * vol, int_riem_sq=c["riem_sq"] * vol)
