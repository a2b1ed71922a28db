"""Witness estimation, quantum trade-off boundaries and sharpness certification.

The two success rates are

    W_AB = (1/8) sum_{x,y} P(b = x_y | x, y)
    W_AC = (1/8) sum_{x,z} P(c = x_z | x, z)

and an observed pair confines the instrument sharpness to

    eta_min = sqrt(2) (2 W_AB - 1)
    eta_max = 2 sqrt((2 + sqrt(2) - 4 W_AC)(2 W_AC - 1)).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import TOL
from .protocol import CountTable, JointDistribution

SQRT2 = math.sqrt(2.0)
MAX_W_AB = (2.0 + SQRT2) / 4.0  # quantum maximum of the first witness


@dataclass(frozen=True)
class WitnessPair:
    """Measured (or exact) witness pair with standard errors.

    Values are validated against [0, 1] only: the usual convention places
    both witnesses in [1/2, 1] via output relabelling, but shot noise on a
    non-interactive strategy legitimately produces estimates a hair below
    1/2, and the certification formulas clamp as needed.
    """

    w_ab: float
    w_ac: float
    sigma_ab: float = 0.0
    sigma_ac: float = 0.0

    def __post_init__(self):
        for name in ("w_ab", "w_ac"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")
        if self.sigma_ab < 0.0 or self.sigma_ac < 0.0:
            raise ValueError("standard errors must be nonnegative")

    def to_dict(self) -> dict:
        return {
            "w_ab": self.w_ab,
            "w_ac": self.w_ac,
            "sigma_ab": self.sigma_ab,
            "sigma_ac": self.sigma_ac,
        }


@dataclass(frozen=True)
class SharpnessInterval:
    """Certified interval [eta_min, eta_max] with propagated errors."""

    eta_min: float
    eta_max: float
    sigma_min: float
    sigma_max: float
    consistent: bool

    @property
    def width(self) -> float:
        return self.eta_max - self.eta_min

    def clamped(self) -> "SharpnessInterval":
        """Sorted copy for downstream use when the raw interval is inverted."""
        if self.eta_min <= self.eta_max:
            return self
        return SharpnessInterval(
            eta_min=self.eta_max,
            eta_max=self.eta_min,
            sigma_min=self.sigma_max,
            sigma_max=self.sigma_min,
            consistent=self.consistent,
        )

    def to_dict(self) -> dict:
        return {
            "eta_min": self.eta_min,
            "eta_max": self.eta_max,
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "consistent": self.consistent,
        }


def _witnesses_from_probabilities(p: np.ndarray) -> tuple[float, float]:
    w_ab = 0.0
    w_ac = 0.0
    for x0 in (0, 1):
        for x1 in (0, 1):
            bits = (x0, x1)
            for y in (0, 1):
                # average over z: P(b = x_y | x, y, z)
                w_ab += p[x0, x1, y, :, bits[y], :].sum() / 2.0
            for z in (0, 1):
                w_ac += p[x0, x1, :, z, :, bits[z]].sum() / 2.0
    return w_ab / 8.0, w_ac / 8.0


def compute_witnesses(data: JointDistribution | CountTable) -> WitnessPair:
    """Witness pair from exact probabilities or from observed counts.

    For counts, the standard errors come from binomial error propagation on
    the per-setting empirical frequencies.
    """
    if isinstance(data, JointDistribution):
        w_ab, w_ac = _witnesses_from_probabilities(data.p)
        return WitnessPair(w_ab=w_ab, w_ac=w_ac)
    if not isinstance(data, CountTable):
        raise TypeError(f"expected JointDistribution or CountTable, got {type(data)}")

    totals = data.setting_totals()
    if np.any(totals == 0):
        raise ValueError("at least one setting recorded zero events")
    freq = data.counts / totals[..., None, None]
    w_ab, w_ac = _witnesses_from_probabilities(freq)

    var_ab = 0.0
    var_ac = 0.0
    for x0 in (0, 1):
        for x1 in (0, 1):
            bits = (x0, x1)
            for y in (0, 1):
                for z in (0, 1):
                    n = totals[x0, x1, y, z]
                    p_b = freq[x0, x1, y, z, bits[y], :].sum()
                    p_c = freq[x0, x1, y, z, :, bits[z]].sum()
                    var_ab += p_b * (1.0 - p_b) / n
                    var_ac += p_c * (1.0 - p_c) / n
    # each per-setting estimate enters the witness with weight 1/16
    return WitnessPair(
        w_ab=w_ab,
        w_ac=w_ac,
        sigma_ab=math.sqrt(var_ab) / 16.0,
        sigma_ac=math.sqrt(var_ac) / 16.0,
    )


def bootstrap_witness_sigmas(
    table: CountTable, replicates: int = 200, seed: int = 0
) -> tuple[float, float]:
    """Standard errors by multinomial resampling of the count table.

    Cross-check for the first-order analytic propagation in
    :func:`compute_witnesses`.
    """
    if replicates < 2:
        raise ValueError("need at least two bootstrap replicates")
    totals = table.setting_totals()
    freq = table.counts / totals[..., None, None]
    rng = np.random.default_rng(seed)
    samples = np.empty((replicates, 2))
    for k in range(replicates):
        resampled = np.zeros_like(table.counts)
        for idx in np.ndindex(2, 2, 2, 2):
            n = int(totals[idx])
            cell_p = freq[idx].reshape(4)
            resampled[idx] = rng.multinomial(n, cell_p).reshape(2, 2)
        samples[k] = _witnesses_from_probabilities(
            resampled / totals[..., None, None]
        )
    return float(samples[:, 0].std(ddof=1)), float(samples[:, 1].std(ddof=1))


def ideal_witness_pair(eta: float) -> tuple[float, float]:
    """Witness pair of the optimal strategy at sharpness eta."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta={eta} outside [0, 1]")
    w_ab = (2.0 + SQRT2 * eta) / 4.0
    w_ac = (4.0 + SQRT2 + math.sqrt(2.0 - 2.0 * eta * eta)) / 8.0
    return w_ab, w_ac


def optimal_tradeoff(w_ab: float) -> float:
    """Largest W_AC allowed by quantum theory for a given W_AB."""
    radicand = 16.0 * w_ab - 16.0 * w_ab * w_ab - 2.0
    if radicand < -TOL.radicand:
        raise ValueError(f"w_ab={w_ab} outside [1/2, (2+sqrt(2))/4]")
    radicand = max(radicand, 0.0)
    return (4.0 + SQRT2 + math.sqrt(radicand)) / 8.0


def certify_sharpness(pair: WitnessPair) -> SharpnessInterval:
    """Invert a witness pair into the certified sharpness interval.

    Both bounds clamp to [0, 1]; a negative radicand in the upper bound
    (W_AC above the quantum maximum) clamps to zero.  Errors are first-order
    analytic; the upper-bound derivative diverges at the radicand zero, in
    which case sigma_max is reported as infinity.
    """
    eta_min = SQRT2 * (2.0 * pair.w_ab - 1.0)
    eta_min = float(np.clip(eta_min, 0.0, 1.0))
    sigma_min = 2.0 * SQRT2 * pair.sigma_ab

    radicand = (2.0 + SQRT2 - 4.0 * pair.w_ac) * (2.0 * pair.w_ac - 1.0)
    if radicand < 0.0:
        eta_max = 0.0
        sigma_max = math.inf if pair.sigma_ac > 0.0 else 0.0
    else:
        eta_max = 2.0 * math.sqrt(radicand)
        # d(eta_max)/d(W_AC) = (8 + 2 sqrt(2) - 16 W_AC) / sqrt(radicand)
        slope_num = abs(8.0 + 2.0 * SQRT2 - 16.0 * pair.w_ac)
        if radicand <= TOL.radicand:
            sigma_max = math.inf if pair.sigma_ac > 0.0 else 0.0
        else:
            sigma_max = slope_num / math.sqrt(radicand) * pair.sigma_ac
    eta_max = float(np.clip(eta_max, 0.0, 1.0))

    return SharpnessInterval(
        eta_min=eta_min,
        eta_max=eta_max,
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        consistent=eta_min <= eta_max + TOL.interval,
    )


# --- optimal projective-simulation trade-off -------------------------------
#
# Bob's strategy is restricted, per input y, to a convex mixture: with weight
# q_y a sharp Lueders measurement along a unit vector n_y, with weight 1-q_y
# the identity channel (and a coin flip for the classical outcome).  Alice's
# encodings align with (q0 n0 +/- q1 n1) and Charlie picks the best projective
# pair, which leaves a three-parameter family (q0, q1, cos angle(n0, n1)).


def _mixture_witnesses(q0, q1, u):
    """Best (W_AB, W_AC) for mixing weights q0, q1 and axis overlap u.

    All arguments broadcast; returns a pair of arrays.
    """
    q0, q1, u = np.broadcast_arrays(
        np.asarray(q0, float), np.asarray(q1, float), np.asarray(u, float)
    )
    half = np.arccos(np.clip(u, -1.0, 1.0)) / 2.0
    sin_h, cos_h = np.sin(half), np.cos(half)
    # axes n0 = (sin h, cos h), n1 = (-sin h, cos h) in the plane they span
    s_plus = np.hypot((q0 - q1) * sin_h, (q0 + q1) * cos_h)
    s_minus = np.hypot((q0 + q1) * sin_h, (q0 - q1) * cos_h)
    w_ab = 0.5 + (s_plus + s_minus) / 8.0

    # alice directions r0 || q0 n0 + q1 n1, r1 || q0 n0 - q1 n1 (unit);
    # a vanishing sum leaves the direction free, so pick it orthogonal to
    # the partner (s_plus = 0 forces r1 = (1, 0), s_minus = 0 forces
    # r0 = (0, 1), and both vanish only in the do-nothing corner)
    tiny = 1e-300
    r0x = np.where(s_plus > 1e-12, (q0 - q1) * sin_h / (s_plus + tiny), 0.0)
    r0y = np.where(s_plus > 1e-12, (q0 + q1) * cos_h / (s_plus + tiny), 1.0)
    r1x = np.where(s_minus > 1e-12, (q0 + q1) * sin_h / (s_minus + tiny), 1.0)
    r1y = np.where(s_minus > 1e-12, (q0 - q1) * cos_h / (s_minus + tiny), 0.0)

    # average channel on the plane: M = (1 - (q0+q1)/2) I + (q0 P0 + q1 P1)/2
    iso = 1.0 - (q0 + q1) / 2.0
    mxx = iso + 0.5 * (q0 * sin_h * sin_h + q1 * sin_h * sin_h)
    mxy = 0.5 * (q0 * sin_h * cos_h - q1 * sin_h * cos_h)
    myy = iso + 0.5 * (q0 * cos_h * cos_h + q1 * cos_h * cos_h)

    def image(vx, vy):
        return mxx * vx + mxy * vy, mxy * vx + myy * vy

    ax, ay = image(r0x + r1x, r0y + r1y)
    bx, by = image(r0x - r1x, r0y - r1y)
    w_ac = 0.5 + (np.hypot(ax, ay) + np.hypot(bx, by)) / 8.0
    return w_ab, w_ac


@lru_cache(maxsize=1)
def _coarse_mixture_grid():
    q = np.linspace(0.0, 1.0, 41)
    u = np.linspace(-1.0, 1.0, 81)
    q0, q1, uu = np.meshgrid(q, q, u, indexing="ij")
    w_ab, w_ac = _mixture_witnesses(q0, q1, uu)
    return q0, q1, uu, w_ab, w_ac


def projective_bound(w_ab: float) -> float:
    """Largest W_AC reachable with stochastic-projective instruments, W_AB >= w_ab.

    Numerical upper envelope over the mixture family described above: coarse
    grid plus iterative local zoom, deterministic.  Coincides with
    :func:`optimal_tradeoff` at both ends of the domain and never exceeds it.
    """
    if not 0.5 - TOL.radicand <= w_ab <= MAX_W_AB + TOL.radicand:
        raise ValueError(f"w_ab={w_ab} outside [1/2, (2+sqrt(2))/4]")
    feas_atol = 1e-12

    q0g, q1g, ug, wabg, wacg = _coarse_mixture_grid()
    feasible = wabg >= w_ab - feas_atol
    if not np.any(feasible):
        raise ValueError(f"no strategy reaches w_ab={w_ab}")
    masked = np.where(feasible, wacg, -np.inf)
    flat = int(np.argmax(masked))
    best = np.unravel_index(flat, masked.shape)
    center = np.array([q0g[best], q1g[best], ug[best]])
    value = float(masked[best])

    widths = np.array([1.0 / 40.0, 1.0 / 40.0, 2.0 / 80.0])
    lows = np.array([0.0, 0.0, -1.0])
    highs = np.array([1.0, 1.0, 1.0])
    for _ in range(40):
        axes = [
            np.linspace(
                max(lows[i], center[i] - widths[i]),
                min(highs[i], center[i] + widths[i]),
                17,
            )
            for i in range(3)
        ]
        g0, g1, gu = np.meshgrid(*axes, indexing="ij")
        wab_z, wac_z = _mixture_witnesses(g0, g1, gu)
        masked_z = np.where(wab_z >= w_ab - feas_atol, wac_z, -np.inf)
        flat = int(np.argmax(masked_z))
        if np.isfinite(masked_z.reshape(-1)[flat]):
            best = np.unravel_index(flat, masked_z.shape)
            candidate = float(masked_z[best])
            if candidate > value:
                value = candidate
                center = np.array([g0[best], g1[best], gu[best]])
        widths *= 0.5
        if np.max(widths) < 1e-9:
            break
    return value
