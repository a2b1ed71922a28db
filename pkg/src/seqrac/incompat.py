"""Degree-of-incompatibility measure and its witness-based lower bounds.

For two dichotomic qubit observables with Bloch vectors n0, n1 the degree of
incompatibility is D = |n0 + n1| + |n0 - n1| - 2, reset to zero when
negative; complementary Pauli observables saturate the maximum 2(sqrt(2)-1).
"""

import math
from dataclasses import dataclass

import numpy as np

from .certify import SharpnessInterval, WitnessPair
from .constants import TOL

MAX_DEGREE = 2.0 * (math.sqrt(2.0) - 1.0)

# Both bounds below assume Bob's observables are unbiased and share one
# sharpness; surfaced in serialized results.
ASSUMPTIONS = ("unbiased_bob", "eta0_eq_eta1")


@dataclass(frozen=True)
class IncompatibilityResult:
    """Lower bounds on Bob's and Charlie's degree of incompatibility."""

    d_bob: float
    d_charlie: float
    eta_argmin: float

    def to_dict(self) -> dict:
        return {
            "d_bob": self.d_bob,
            "d_charlie": self.d_charlie,
            "eta_argmin": self.eta_argmin,
            "assumptions": list(ASSUMPTIONS),
        }


def degree_of_incompatibility(n0, n1) -> float:
    """D = |n0+n1| + |n0-n1| - 2, reset to 0 for compatible pairs."""
    n0 = np.asarray(n0, dtype=float).reshape(3)
    n1 = np.asarray(n1, dtype=float).reshape(3)
    for v in (n0, n1):
        if np.linalg.norm(v) > 1.0 + TOL.bloch_clamp:
            raise ValueError(f"Bloch vector norm {np.linalg.norm(v)} exceeds 1")
    raw = float(np.linalg.norm(n0 + n1) + np.linalg.norm(n0 - n1) - 2.0)
    return max(raw, 0.0)


def single_qrac_bound(w: float) -> float:
    """Lower bound max(0, 8w - 6) from one random-access-code success rate."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"witness value {w} outside [0, 1]")
    return max(0.0, 8.0 * w - 6.0)


def _charlie_objective(eta, w_ac: float, eta_min: float):
    """Bound value before the negative reset, vectorized over eta."""
    eta = np.asarray(eta, dtype=float)
    g = np.sqrt(np.clip(1.0 - eta * eta, 0.0, None))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(eta > 0.0, eta_min / np.where(eta > 0.0, eta, 1.0), 1.0)
    ratio = np.clip(ratio, 0.0, 1.0)
    f = 2.0 * ratio * np.sqrt(np.clip(1.0 - ratio * ratio, 0.0, None))
    denom = 1.0 + g + f * (1.0 - g)
    # eta = 0 forces g = 1, where the f term cancels; fix the 0/0 ratio there
    denom = np.where(eta == 0.0, 2.0, denom)
    return (16.0 * w_ac - 8.0) / denom - 2.0


def _golden_minimize(f, lo: float, hi: float, tol: float = TOL.golden):
    """Golden-section search for the minimum of a unimodal bracket."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    inv_phi2 = (3.0 - math.sqrt(5.0)) / 2.0
    a, b = min(lo, hi), max(lo, hi)
    h = b - a
    if h <= tol:
        mid = (a + b) / 2.0
        return mid, float(f(mid))
    steps = int(math.ceil(math.log(tol / h) / math.log(inv_phi)))
    c = a + inv_phi2 * h
    d = a + inv_phi * h
    yc, yd = float(f(c)), float(f(d))
    for _ in range(steps - 1):
        if yc < yd:
            b, d, yd = d, c, yc
            h *= inv_phi
            c = a + inv_phi2 * h
            yc = float(f(c))
        else:
            a, c, yc = c, d, yd
            h *= inv_phi
            d = a + inv_phi * h
            yd = float(f(d))
    x = c if yc < yd else d
    return x, min(yc, yd)


def sequential_qrac_bound(
    pair: WitnessPair, interval: SharpnessInterval, grid_points: int = 10_000
) -> IncompatibilityResult:
    """Bounds from both witnesses plus the certified sharpness interval.

    Bob's bound uses only W_AB.  Charlie's bound minimizes the interval-aware
    expression over eta in [eta_min, eta_max] on a dense grid followed by
    golden-section refinement; an inverted interval is sorted first (callers
    flag that situation separately).
    """
    work = interval.clamped()
    lo, hi = work.eta_min, work.eta_max
    if math.isnan(lo) or math.isnan(hi):
        raise ValueError("interval bounds must be finite")
    if lo > hi:
        raise ValueError("empty sharpness interval after clamping")

    d_bob = single_qrac_bound(pair.w_ab)

    objective = lambda eta: _charlie_objective(eta, pair.w_ac, lo)
    if hi - lo < 1e-15:
        eta_argmin = lo
        value = float(objective(lo))
    else:
        grid = np.linspace(lo, hi, grid_points)
        values = objective(grid)
        k = int(np.argmin(values))
        bracket_lo = grid[max(k - 1, 0)]
        bracket_hi = grid[min(k + 1, grid_points - 1)]
        eta_argmin, value = _golden_minimize(objective, bracket_lo, bracket_hi)
        if values[k] < value:
            eta_argmin, value = float(grid[k]), float(values[k])

    return IncompatibilityResult(
        d_bob=d_bob,
        d_charlie=max(value, 0.0),
        eta_argmin=float(eta_argmin),
    )


def brute_force_charlie_bound(
    pair: WitnessPair, interval: SharpnessInterval, points: int = 1_000_000
) -> tuple[float, float]:
    """Dense-scan oracle for the Charlie bound: (value, argmin).

    Independent of the grid-plus-golden path; used to validate it.
    """
    work = interval.clamped()
    grid = np.linspace(work.eta_min, work.eta_max, points)
    values = _charlie_objective(grid, pair.w_ac, work.eta_min)
    k = int(np.argmin(values))
    return max(float(values[k]), 0.0), float(grid[k])
