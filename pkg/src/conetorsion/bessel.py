"""Bessel zeros, Hadamard products, quadratic Bessel determinants and cone spectra.

Function values come from scipy.special (AMOS/Cephes). The zero finder is a
grid-bracketing bisection kernel, compiled with Cython when available; set
CONETORSION_PURE_PYTHON=1 to force the numpy fallback.
"""
from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln, ive, polygamma

from .sphere import SpectralSequence, alpha, bessel_order, coexact_multiplicity

if os.environ.get("CONETORSION_PURE_PYTHON"):
    from . import _zeros_py as _kernel
    BACKEND = "python"
else:
    try:
        from . import _zeros as _kernel
        BACKEND = "cython"
    except ImportError:
        from . import _zeros_py as _kernel
        BACKEND = "python"

GRID_STEP = 0.1


class BesselZeroError(ArithmeticError):
    pass


# zero tables ---------------------------------------------------------------

_lock = threading.Lock()
_tables: Dict[Tuple[float, Optional[float]], np.ndarray] = {}


def _key(nu, c):
    return (float(nu), None if c is None else float(c))


def zeros_upto(nu: float, c: Optional[float], x_max: float, kernel=None) -> np.ndarray:
    """All positive zeros <= x_max of J_nu (c is None) or c J_nu + x J_nu'."""
    if nu < 0:
        raise ValueError("nu must be >= 0")
    k = kernel or _kernel
    hat = c is not None
    try:
        return k.zeros(float(nu), 0.0 if c is None else float(c), hat, 0, float(x_max), GRID_STEP)
    except ArithmeticError as exc:
        raise BesselZeroError(str(exc)) from exc


def first_zeros(nu: float, c: Optional[float], count: int, kernel=None) -> np.ndarray:
    if count < 1:
        raise ValueError("count must be >= 1")
    if nu < 0:
        raise ValueError("nu must be >= 0")
    key = _key(nu, c)
    table = _tables.get(key) if kernel is None else None
    if table is not None and table.size >= count:
        return table[:count]
    k = kernel or _kernel
    try:
        z = k.zeros(float(nu), 0.0 if c is None else float(c), c is not None, int(count), 0.0, GRID_STEP)
    except ArithmeticError as exc:
        raise BesselZeroError(str(exc)) from exc
    if z.size < count:
        raise BesselZeroError(f"found only {z.size} of {count} zeros (nu={nu}, c={c})")
    if kernel is None:
        with _lock:
            old = _tables.get(key)
            if old is None or old.size < z.size:
                _tables[key] = z
    return z


def bessel_zero(nu: float, k: int) -> float:
    """k-th positive zero j_{nu,k} of J_nu."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return float(first_zeros(nu, None, k)[k - 1])


def hat_bessel_zero(nu: float, c: float, k: int) -> float:
    """k-th positive zero of c J_nu(x) + x J_nu'(x)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return float(first_zeros(nu, c, k)[k - 1])


def bessel_derivative_zero(nu: float, k: int) -> float:
    """k-th positive zero of J_nu' (the zero at x = 0 for nu = 0 is skipped)."""
    return hat_bessel_zero(nu, 0.0, k)


# modified Bessel helpers ---------------------------------------------------

def log_iv(nu: float, z: float) -> float:
    return math.log(ive(nu, z)) + z


def hat_iv(nu: float, c: float, z: float) -> float:
    """c I_nu(z) + z I_nu'(z) = (c + nu) I_nu(z) + z I_{nu+1}(z)."""
    return (c + nu) * ive(nu, z) * math.exp(z) + z * ive(nu + 1, z) * math.exp(z)


def imaginary_hat_zero(nu: float, c: float) -> Optional[float]:
    """y > 0 with c I_nu(y) + y I_nu'(y) = 0; exists iff nu + c < 0."""
    if nu + c >= 0:
        return None

    def g(y):
        return (c + nu) + y * ive(nu + 1, y) / ive(nu, y)

    hi = 1.0
    while g(hi) < 0:
        hi *= 2
    return brentq(g, 1e-12, hi, xtol=1e-15, rtol=1e-15)


@dataclass(frozen=True)
class HadamardCheck:
    lhs: float
    rhs: float
    relative_error: float
    K: int
    tail: float


def hadamard_product_check(nu: float, c: Optional[float], z: float, K: int) -> HadamardCheck:
    """Compare I_nu (or c I_nu + z I_nu') with its Weierstrass product truncated at K.

    The tail sum_{k>K} log(1 + z^2/j_k^2) is estimated from j_k ~ pi (k + beta),
    with beta fitted to the last computed zero.
    """
    if K < 100:
        raise ValueError("K must be >= 100")
    if nu <= 0:
        raise ValueError("nu must be positive")
    if z == 0:
        # both sides carry z^nu; the product itself is 1
        return HadamardCheck(0.0, 0.0, 0.0, K, 0.0)
    zs = first_zeros(nu, c, K)
    log_prod = float(np.sum(np.log1p((z / zs) ** 2)))
    beta = zs[-1] / math.pi - K
    tail = z * z * float(polygamma(1, K + 1 + beta)) / math.pi ** 2
    log_prod += tail
    if c is None:
        lhs = math.exp(log_iv(nu, z))
        rhs = math.exp(nu * math.log(z / 2) - gammaln(nu + 1) + log_prod)
    else:
        lhs = hat_iv(nu, c, z)
        y = imaginary_hat_zero(nu, c)
        extra = 1.0 if y is None else (1 - (z / y) ** 2)
        rhs = (1 + c / nu) * math.exp(nu * math.log(z / 2) - gammaln(nu) + log_prod) * extra
    return HadamardCheck(lhs, rhs, abs(lhs - rhs) / abs(lhs), K, tail)


# quadratic Bessel zeta --------------------------------------------------------

def quadratic_bessel_zeta_at_zero(nu: float) -> float:
    """z(0) for sum_k (j_{nu,k}^2/l^2 + q^2)^{-s}."""
    return -0.5 * (nu + 0.5)


def quadratic_bessel_zeta_det(nu: float, q_shift: float, l: float) -> float:
    """-z'(0) for the sequence j_{nu,k}^2/l^2 + q^2."""
    if not l > 0:
        raise ValueError("l must be positive")
    if q_shift < 0:
        raise ValueError("q_shift must be >= 0")
    if q_shift == 0:
        return (0.5 * math.log(math.pi) + (nu + 0.5) * math.log(l)
                - (nu - 0.5) * math.log(2) - gammaln(nu + 1))
    return 0.5 * math.log(2 * math.pi * l) + log_iv(nu, l * q_shift) - nu * math.log(q_shift)


# cone spectrum -----------------------------------------------------------------

ABSOLUTE = "absolute"
RELATIVE = "relative"
WORK_LIMIT = 200_000


@dataclass(frozen=True)
class ConeSpectrumSpec:
    p: int
    q: int
    bc: str = ABSOLUTE
    nu: float = 1.0
    l: float = 1.0
    cutoff: float = 50.0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if not 0 <= self.q <= 2 * self.p:
            raise ValueError("q must lie in 0..2p")
        if self.bc not in (ABSOLUTE, RELATIVE):
            raise ValueError("bc must be 'absolute' or 'relative'")
        if not (self.cutoff > 0 and self.l > 0 and self.nu > 0):
            raise ValueError("cutoff, l and nu must be positive")


def _harmonic_multiplicity(p, d):
    # round sphere S^{2p-1}: only H^0 and H^m
    return 1 if d in (0, 2 * p - 1) else 0


def _family_rows(spec: ConeSpectrumSpec, tag, d, kind, c_sign, harmonic):
    """Rows (value, multiplicity, tag) of one family attached to section degree d."""
    p, m = spec.p, 2 * spec.p - 1
    x_max = spec.l * math.sqrt(spec.cutoff)
    rows = []
    if harmonic:
        if not 0 <= d <= m:
            return rows
        mult = _harmonic_multiplicity(p, d)
        if not mult:
            return rows
        a = alpha(p, d)
        c = None if kind == "j" else c_sign * a
        for z in zeros_upto(abs(a), c, x_max):
            rows.append(((z / spec.l) ** 2, mult, tag))
        return rows
    if not 0 <= d <= m - 1:
        return rows
    a = alpha(p, d)
    c = None if kind == "j" else c_sign * a
    n = 1
    while True:
        mu = bessel_order(p, d, n, spec.nu)
        zs = zeros_upto(mu, c, x_max)
        if zs.size == 0:
            break
        mult = coexact_multiplicity(p, d, n)
        rows.extend(((z / spec.l) ** 2, mult, tag) for z in zs)
        if len(rows) > WORK_LIMIT:
            raise RuntimeError("cutoff too large: work limit exceeded")
        n += 1
    return rows


# (tag, degree offset, kind, sign of c relative to alpha_d, harmonic)
_ABS_FAMILIES = (
    ("1", 0, "hat", 1, False),
    ("2", 1, "hat", 1, False),
    ("3", 1, "j", 0, False),
    ("4", 2, "j", 0, False),
    ("E", 0, "hat", 1, True),
    ("O", 1, "hat", 1, True),
)
_REL_FAMILIES = (
    ("1", 0, "j", 0, False),
    ("2", 1, "j", 0, False),
    ("3", 1, "hat", -1, False),
    ("4", 2, "hat", -1, False),
    ("E", 0, "j", 0, True),
    ("O", 1, "j", 0, True),
)


def cone_spectrum_rows(spec: ConeSpectrumSpec) -> List[tuple]:
    fams = _ABS_FAMILIES if spec.bc == ABSOLUTE else _REL_FAMILIES
    # zeros below x summed over all orders mu < x: about x^2 / (2 pi) per family
    x_max = spec.l * math.sqrt(spec.cutoff)
    if len(fams) * x_max ** 2 / (2 * math.pi) > WORK_LIMIT:
        raise RuntimeError("cutoff too large: work limit exceeded")
    rows = []
    for tag, off, kind, sign, harm in fams:
        rows.extend(_family_rows(spec, tag, spec.q - off, kind, sign, harm))
    rows = [r for r in rows if r[0] <= spec.cutoff]
    rows.sort(key=lambda r: r[0])
    return rows


def merge_rows(rows, rtol=1e-9):
    """Merge numerically equal values, summing multiplicities."""
    merged: List[list] = []
    for value, mult, _tag in sorted(rows, key=lambda r: r[0]):
        if merged and abs(value - merged[-1][1]) <= rtol * max(abs(value), 1.0):
            merged[-1][0] += mult
        else:
            merged.append([mult, value])
    return tuple((m, v) for m, v in merged)


def cone_spectrum(spec: ConeSpectrumSpec) -> SpectralSequence:
    return SpectralSequence(merge_rows(cone_spectrum_rows(spec)), "numeric")


def counting_function(spec: ConeSpectrumSpec) -> int:
    return sum(m for _v, m, _t in cone_spectrum_rows(spec))


@dataclass
class DualityReport:
    p: int
    results: list  # (q, matched, detail)

    @property
    def ok(self) -> bool:
        return all(r[1] for r in self.results)

    @property
    def first_mismatch(self):
        for r in self.results:
            if not r[1]:
                return r
        return None


def compare_spectra(a: SpectralSequence, b: SpectralSequence, tol=1e-9, cutoff=None):
    ea, eb = list(a.entries), list(b.entries)
    if cutoff is not None:
        # a value sitting on the cutoff may be kept on one side only
        edge = cutoff * (1 - 10 * tol)
        ea = [e for e in ea if e[1] < edge]
        eb = [e for e in eb if e[1] < edge]
    if len(ea) != len(eb):
        return False, f"{len(ea)} distinct values vs {len(eb)}"
    for (ma, va), (mb, vb) in zip(ea, eb):
        if ma != mb or abs(va - vb) > tol * max(1.0, abs(va)):
            return False, f"value {va!r} (x{ma}) vs {vb!r} (x{mb})"
    return True, f"{len(ea)} values match"


def poincare_duality_check(p: int, nu: float = 1.0, l: float = 1.0, cutoff: float = 100.0,
                           tol: float = 1e-9) -> DualityReport:
    m = 2 * p - 1
    results = []
    for q in range(m + 2):
        absq = cone_spectrum(ConeSpectrumSpec(p, q, ABSOLUTE, nu, l, cutoff))
        relq = cone_spectrum(ConeSpectrumSpec(p, m + 1 - q, RELATIVE, nu, l, cutoff))
        ok, detail = compare_spectra(absq, relq, tol, cutoff)
        results.append((q, ok, detail))
    return DualityReport(p, results)
