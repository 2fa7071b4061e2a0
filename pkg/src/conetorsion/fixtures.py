"""Reference values used by the verification suites."""
from fractions import Fraction

# Rz Phi_{j,q} at s=0 keyed by (p, q, j)
PHI_FINITE_PARTS = {
    (2, 1, 1): Fraction(1),
    (2, 1, 3): Fraction(2, 315),
    (2, 0, 1): Fraction(2),
    (2, 0, 3): Fraction(214, 315),
    (3, 2, 1): Fraction(1),
    (3, 2, 3): Fraction(2, 315),
    (3, 1, 1): Fraction(2),
    (3, 1, 3): Fraction(214, 315),
    (3, 1, 5): Fraction(31706, 75075),
    (3, 0, 1): Fraction(2),
    (3, 0, 3): Fraction(844, 315),
    (3, 0, 5): Fraction(487876, 75075),
}

# reference whose denominator breaks the 75075 pattern; compared, never asserted
PHI_REPORT_ONLY = {(3, 2, 5): "-346/22522"}

# S = sum c * Res_s zeta(s, Delta_q), keyed by (q, s)
LOWDIM_COEFFICIENTS = {
    3: {(0, Fraction(1, 2)): Fraction(3), (0, Fraction(3, 2)): Fraction(-1, 6)},
    5: {
        (0, Fraction(1, 2)): Fraction(5, 2),
        (1, Fraction(1, 2)): Fraction(-3, 2),
        (2, Fraction(1, 2)): Fraction(1, 2),
        (0, Fraction(3, 2)): Fraction(-1),
        (0, Fraction(5, 2)): Fraction(9, 10),
    },
}
