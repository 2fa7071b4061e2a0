"""Pure-Python (numpy) zero-finding kernel, used when the compiled one is absent.

The function is J_nu(x) or, with ``hat``, c J_nu(x) + x J_nu'(x), written as
(c + nu) J_nu(x) - x J_{nu+1}(x). Below x = nu/2 the sign is taken from the
normalized power series x^{-nu} 2^nu Gamma(nu+1) f(x), which avoids underflow.
Sign changes are located on a uniform grid and each bracket is bisected to
machine precision.
"""
import numpy as np
from scipy.special import jv

MAX_SERIES = 400
BISECT_MAX = 2200
_CHUNK = 2048


def _series(nu, c, hat, x):
    y = 0.25 * x * x
    term = np.ones_like(x)
    total = np.full_like(x, (c + nu) if hat else 1.0)
    for k in range(1, MAX_SERIES):
        term = term * (-y / (k * (nu + k)))
        part = term * ((c + nu + 2 * k) if hat else 1.0)
        total = total + part
        if np.all(np.abs(part) < 1e-17 * np.abs(total)) and np.all(np.abs(term) < 1e-17):
            break
    return total


def _f(nu, c, hat, x):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < 0.5 * nu
    if small.any():
        out[small] = _series(nu, c, hat, x[small])
    big = ~small
    if big.any():
        xb = x[big]
        out[big] = (c + nu) * jv(nu, xb) - xb * jv(nu + 1.0, xb) if hat else jv(nu, xb)
    return out


def evaluate(nu, c, hat, x):
    return float(_f(nu, c, hat, np.array([x]))[0])


def _refine(nu, c, hat, a, fa, b):
    a = a.copy()
    b = b.copy()
    fa = fa.copy()
    for _ in range(BISECT_MAX):
        mid = 0.5 * (a + b)
        if np.all((mid <= a) | (mid >= b)):
            return mid
        fm = _f(nu, c, hat, mid)
        if np.isnan(fm).any():
            i = int(np.flatnonzero(np.isnan(fm))[0])
            raise ArithmeticError(f"NaN inside bracket [{a[i]!r}, {b[i]!r}]")
        left = (fm > 0) == (fa > 0)
        exact = fm == 0
        a = np.where(left & ~exact, mid, a)
        fa = np.where(left & ~exact, fm, fa)
        b = np.where(~left | exact, mid, b)
        a = np.where(exact, mid, a)
    i = int(np.argmax(b - a))
    raise ArithmeticError(f"bisection did not converge, bracket [{a[i]!r}, {b[i]!r}]")


def zeros(nu, c, hat, count, x_max, step):
    by_count = count > 0
    found = []
    n_found = 0
    f_prev = -1.0 if hat and c + nu <= 0.0 else 1.0
    x_prev = 0.0
    k0 = 0
    while True:
        # grid points k * step, never accumulated
        xs = step * np.arange(k0 + 1, k0 + _CHUNK + 1, dtype=float)
        k0 += _CHUNK
        if not by_count:
            xs = xs[xs < x_max]
            xs = np.append(xs, x_max)
        fs = _f(nu, c, hat, xs)
        if np.isnan(fs).any():
            raise ArithmeticError(f"NaN at x={xs[np.isnan(fs)][0]!r} (nu={nu!r}, c={c!r})")
        # exact grid zeros: take the sign just to the right
        hits = fs == 0
        if hits.any():
            fs = fs.copy()
            fs[hits] = _f(nu, c, hat, xs[hits] * (1 + 1e-12))
        left_x = np.concatenate(([x_prev], xs[:-1]))
        left_f = np.concatenate(([f_prev], fs[:-1]))
        change = (left_f > 0) != (fs > 0)
        idx = np.flatnonzero(change)
        if idx.size:
            z = _refine(nu, c, hat, left_x[idx], left_f[idx], xs[idx])
            z = np.where(hits[idx], xs[idx], z)
            found.append(z)
            n_found += z.size
        x_prev = xs[-1]
        f_prev = fs[-1]
        if by_count and n_found >= count:
            break
        if not by_count and x_prev >= x_max:
            break
    res = np.concatenate(found) if found else np.empty(0)
    if by_count:
        return res[:count]
    return res[res <= x_max]
