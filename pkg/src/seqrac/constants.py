"""Numerical tolerances shared across the package.

All comparison thresholds live in this one record so that an audit of the
numerics has a single place to look.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-9       # op == op^dagger, entrywise
    psd: float = 1e-9             # smallest eigenvalue >= -psd
    trace: float = 1e-12          # Tr(rho) == 1
    bloch_clamp: float = 1e-9     # norms in (1, 1+bloch_clamp] snap to the sphere
    sqrt_residual: float = 1e-10  # R @ R == op, entrywise
    completeness: float = 1e-10   # sum_b K^dag K == identity
    normalization: float = 1e-12  # probabilities sum to one
    radicand: float = 1e-12       # negative radicands above -radicand clamp to 0
    interval: float = 1e-12       # eta_min <= eta_max + interval counts as consistent
    golden: float = 1e-10         # 1-d minimizer bracket width
    descent: float = 1e-8         # multi-start local descent convergence


TOL = Tolerances()

# Best possible average success rate of a classical random access code.
CLASSICAL_BOUND = 0.75
