"""Exact rational combinatorics: binomials, symmetric functions, d-vectors.

Rationals are plain ``fractions.Fraction`` values, which are always kept in
lowest terms with a positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to convert a float to an exact rational")
    return Fraction(x)


class Poly:
    """Sparse univariate polynomial with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in dict(coeffs).items():
                if e < 0:
                    raise ValueError("negative exponent")
                v = as_rational(v)
                if v:
                    c[int(e)] = v
        self._c = c

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def constant(cls, v):
        return cls({0: v})

    @classmethod
    def monomial(cls, e, v=1):
        return cls({e: v})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def __getitem__(self, e):
        return self._c.get(e, Fraction(0))

    def exponents(self):
        return sorted(self._c)

    def items(self):
        return sorted(self._c.items())

    @property
    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return type(self).constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return type(self)._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            f = as_rational(other)
            if not f:
                return type(self)()
            return type(self)._raw({e: v * f for e, v in self._c.items()})
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return type(self)._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / as_rational(other))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        try:
            return self._c == type(self).constant(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def derivative(self):
        return type(self)._raw({e - 1: e * v for e, v in self._c.items() if e})

    def integral(self):
        """Antiderivative vanishing at 0."""
        return type(self)._raw({e + 1: v / (e + 1) for e, v in self._c.items()})

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return sum((v * Fraction(x) ** e for e, v in self._c.items()), Fraction(0))
        return sum(float(v) * x ** e for e, v in self._c.items())

    def coefficient_sum(self) -> Fraction:
        return sum(self._c.values(), Fraction(0))

    def __repr__(self):
        if not self._c:
            return f"{type(self).__name__}(0)"
        terms = " + ".join(f"({v})*{self.var}^{e}" for e, v in self.items())
        return f"{type(self).__name__}({terms})"

    var = "x"


def binom_rational(a, k: int) -> Fraction:
    """Generalized binomial a(a-1)...(a-k+1)/k!."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = as_rational(a)
    num = Fraction(1)
    for i in range(k):
        num *= a - i
    return num / factorial(k)


def elementary_symmetric(values: Sequence, k: int) -> Fraction:
    vals = [as_rational(v) for v in values]
    if k < 0 or k > len(vals):
        raise ValueError(f"k={k} outside 0..{len(vals)}")
    # e[i] after processing a prefix of vals
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in vals:
        for i in range(k, 0, -1):
            e[i] += v * e[i - 1]
    return e[k]


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("n must be >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def odd_harmonic(k: int) -> Fraction:
    """H_k = 1 + 1/3 + ... + 1/(2k-1), H_0 = 0."""
    return sum((Fraction(1, 2 * t - 1) for t in range(1, k + 1)), Fraction(0))


@dataclass(frozen=True)
class DVector:
    p: int
    q: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.p - 1:
            raise ValueError("d-vector must have p-1 entries")

    def e(self, k: int) -> Fraction:
        return elementary_symmetric(self.entries, k)


def d_vector(p: int, q: int) -> DVector:
    if p < 1 or not 0 <= q <= p - 1:
        raise ValueError(f"need 0 <= q <= p-1, got p={p}, q={q}")
    entries = tuple((j - q - 1) * (2 * p - q - j - 1) for j in range(1, p + 1) if j != q + 1)
    return DVector(p, q, entries)


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    params: tuple
    lhs: Fraction
    rhs: Fraction
    informational: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class IdentityReport:
    checks: list

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed and not c.informational]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        out = {}
        for c in self.checks:
            key = c.identity + (" (literal sign)" if c.informational else "")
            n, f = out.get(key, (0, 0))
            out[key] = (n + 1, f + (not c.passed))
        return out


ALPHA_SAMPLE = (Fraction(0), Fraction(1, 2), Fraction(-3), Fraction(7, 5))


def _alt_power_sum(N, power, alpha, outer_sign=None):
    # outer_sign=None puts (-1)^k inside the sum
    total = Fraction(0)
    for k in range(N + 1):
        s = (-1) ** k if outer_sign is None else outer_sign
        total += s * comb(N, k) * (alpha + k) ** power
    return total


def verify_binomial_identities(n_max: int, alphas: Iterable = ALPHA_SAMPLE) -> IdentityReport:
    """Check the four auxiliary binomial identities for all instances up to n_max.

    The two Abel-type sums are asserted with the alternating sign on the
    summation index. The variant with (-1)^n pulled out of the sum is also
    evaluated and recorded as informational (it is false in general).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    alphas = [as_rational(a) for a in alphas]
    checks = []
    for n in range(1, n_max + 1):
        lhs = sum((Fraction((-1) ** k * comb(2 * n, k), factorial(2 * n)) for k in range(n + 1)), Fraction(0))
        rhs = Fraction((-1) ** n * comb(2 * n, n), 2 * factorial(2 * n))
        checks.append(IdentityCheck("I", (n,), lhs, rhs))
    for n in range(1, n_max + 1):
        for a in alphas:
            rhs = Fraction((-1) ** n * factorial(n))
            checks.append(IdentityCheck("II", (n, a), _alt_power_sum(n, n, a), rhs))
            checks.append(IdentityCheck("II", (n, a), _alt_power_sum(n, n, a, (-1) ** n), rhs,
                                        informational=True, note="sign (-1)^n outside the sum"))
    for N in range(1, n_max + 1):
        for n in range(1, N + 1):
            for a in alphas:
                checks.append(IdentityCheck("III", (N, n, a), _alt_power_sum(N, n - 1, a), Fraction(0)))
                checks.append(IdentityCheck("III", (N, n, a), _alt_power_sum(N, n - 1, a, (-1) ** n), Fraction(0),
                                            informational=True, note="sign (-1)^n outside the sum"))
    for n in range(0, n_max + 1):
        for k in range(0, n + 1):
            checks.append(IdentityCheck("IV", (n, k), identity_iv_lhs(n, k), identity_iv_rhs(n, k)))
    return IdentityReport(checks)


def identity_iv_lhs(n: int, k: int) -> Fraction:
    half = Fraction(-1, 2)
    return sum((comb(n + 1, l + 1) * binom_rational(half, l - k) for l in range(k, n + 1)), Fraction(0))


def identity_iv_rhs(n: int, k: int) -> Fraction:
    return Fraction(double_factorial(2 * n + 1),
                    2 ** (n - k) * factorial(n - k) * double_factorial(2 * k + 1))


class NuPoly(Poly):
    """Odd polynomial in x = sin(alpha) = 1/nu."""

    __slots__ = ()
    var = "x"

    def __init__(self, coeffs=None):
        super().__init__(coeffs)
        self._check_odd()

    @classmethod
    def _raw(cls, c):
        obj = super()._raw(c)
        obj._check_odd()
        return obj

    def _check_odd(self):
        for e in self._c:
            if e % 2 == 0:
                raise ValueError(f"NuPoly must be odd, found exponent {e}")

    def to_list(self):
        return [(e, v.numerator, v.denominator) for e, v in self.items()]

    @classmethod
    def from_list(cls, rows):
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in rows})
