# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled zero-finding kernel for J_nu and c J_nu(x) + x J_nu'(x).

Mirrors conetorsion._zeros_py; see that module for the algorithm.
"""
import numpy as np
from libc.math cimport fabs, isnan
from scipy.special.cython_special cimport jv

DEF MAX_SERIES = 400
# enough halvings to shrink any double bracket down to adjacent floats
DEF BISECT_MAX = 2200


cdef double _series(double nu, double c, bint hat, double x) nogil:
    cdef double y = 0.25 * x * x
    cdef double term = 1.0
    cdef double total = (c + nu) if hat else 1.0
    cdef double part
    cdef int k
    for k in range(1, MAX_SERIES):
        term *= -y / (k * (nu + k))
        part = term * ((c + nu + 2 * k) if hat else 1.0)
        total += part
        if fabs(part) < 1e-17 * fabs(total) and fabs(term) < 1e-17:
            break
    return total


cdef double _f(double nu, double c, bint hat, double x) nogil:
    if x < 0.5 * nu:
        return _series(nu, c, hat, x)
    if hat:
        return (c + nu) * jv(nu, x) - x * jv(nu + 1.0, x)
    return jv(nu, x)


def evaluate(double nu, double c, bint hat, double x):
    return _f(nu, c, hat, x)


cdef double _refine(double nu, double c, bint hat, double a, double fa, double b) except? -1.0:
    cdef double mid, fm
    cdef int it
    for it in range(BISECT_MAX):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            return mid
        fm = _f(nu, c, hat, mid)
        if isnan(fm):
            raise ArithmeticError("NaN inside bracket [%r, %r]" % (a, b))
        if fm == 0.0:
            return mid
        if (fm > 0) == (fa > 0):
            a = mid
            fa = fm
        else:
            b = mid
    raise ArithmeticError("bisection did not converge, bracket [%r, %r]" % (a, b))


def zeros(double nu, double c, bint hat, long count, double x_max, double step):
    """Positive zeros in increasing order: the first ``count`` (if > 0) or all <= x_max."""
    cdef list out = []
    cdef double x0 = 0.0, x1, f0, f1
    cdef bint by_count = count > 0
    cdef bint hit
    cdef long i = 0
    # sign of f just right of 0
    f0 = 1.0
    if hat and c + nu <= 0.0:
        f0 = -1.0
    while True:
        i += 1
        # grid points k * step, never accumulated
        x1 = i * step
        if not by_count and x1 >= x_max:
            x1 = x_max
        f1 = _f(nu, c, hat, x1)
        if isnan(f1):
            raise ArithmeticError("NaN at x=%r (nu=%r, c=%r)" % (x1, nu, c))
        hit = f1 == 0.0
        if hit:
            # exact grid zero: take the sign just to the right
            f1 = _f(nu, c, hat, x1 * (1 + 1e-12))
        if (f1 > 0) != (f0 > 0):
            out.append(x1 if hit else _refine(nu, c, hat, x0, f0, x1))
        if by_count and len(out) >= count:
            break
        if not by_count and x1 >= x_max:
            break
        x0 = x1
        f0 = f1
    res = np.asarray(out, dtype=float)
    if not by_count:
        res = res[res <= x_max]
    return res[:count] if by_count else res
