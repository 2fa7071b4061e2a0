"""Analytic torsion of finite metric cones over odd-dimensional sections."""
from .exact import NuPoly, Rational, binom_rational, d_vector, elementary_symmetric, verify_binomial_identities
from .olver import WPoly, log_expansion_coefficients, olver_polynomials, phi_finite_part, phi_polynomial
from .sphere import HeatInvariants, coexact_spectrum, heat_residues, zeta_u_at_zero, zeta_u_residues
from .torsion import (SectionData, TorsionReport, anomaly_lowdim, anomaly_sphere, mn_coefficients,
                      regular_term_sphere, singular_term_lowdim, singular_term_sphere,
                      torsion_from_section_data, torsion_sphere_report)

__version__ = "0.1.0"
