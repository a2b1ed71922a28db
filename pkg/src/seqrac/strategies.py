"""Optimal preparations, instruments and measurements for the sequential protocol.

The conventions are fixed once so that fixtures are bitwise reproducible:
all states live in the xz-plane, Bob's input y=0 measures along x and y=1
along z, and Charlie's input z=0 measures sigma_x, z=1 measures sigma_z.
Alice encodes her bits as Bloch vector ((-1)^x0, 0, (-1)^x1)/sqrt(2).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import TOL
from .qubit import (
    ID2,
    Observable,
    QubitState,
    X_AXIS,
    Z_AXIS,
    bloch_to_state,
    psd_sqrt,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)

Bit = int
BitPair = tuple[int, int]


@dataclass(frozen=True, eq=False)
class PreparationSet:
    """Alice's four qubit preparations, keyed by her input bits (x0, x1)."""

    states: dict[BitPair, QubitState]

    def __post_init__(self):
        keys = set(self.states)
        if keys != {(0, 0), (0, 1), (1, 0), (1, 1)}:
            raise ValueError(f"preparations must cover all four inputs, got {keys}")

    def state(self, x0: Bit, x1: Bit) -> QubitState:
        return self.states[(x0, x1)]

    def is_great_circle_square(self, atol: float = 1e-10) -> bool:
        """All four states pure, adjacent Bloch vectors orthogonal, antipodal opposite."""
        vs = {x: self.states[x].bloch for x in self.states}
        for v in vs.values():
            if abs(np.linalg.norm(v) - 1.0) > atol:
                return False
        for (x0, x1), v in vs.items():
            if abs(float(v @ vs[(1 - x0, 1 - x1)]) + 1.0) > atol:
                return False
            for other in ((x0, 1 - x1), (1 - x0, x1)):
                if abs(float(v @ vs[other])) > atol:
                    return False
        return True


@dataclass(frozen=True, eq=False)
class Instrument:
    """Bob's binary-outcome instrument in Lueders form, one Kraus operator per (y, b)."""

    kraus: dict[tuple[Bit, Bit], np.ndarray]
    observables: tuple[Observable, Observable]

    def __post_init__(self):
        for y in (0, 1):
            total = sum(self.effect(y, b) for b in (0, 1))
            if np.max(np.abs(total - ID2)) > TOL.completeness:
                raise ValueError(f"Kraus operators for y={y} are not complete")
            for b in (0, 1):
                target = self.observables[y].effect(b)
                if np.max(np.abs(self.effect(y, b) - target)) > TOL.completeness:
                    raise ValueError(f"effect ({y},{b}) disagrees with the observable")

    def effect(self, y: Bit, b: Bit) -> np.ndarray:
        k = self.kraus[(y, b)]
        return k.conj().T @ k

    def apply(self, state: QubitState, y: Bit, b: Bit) -> np.ndarray:
        """Unnormalized post-measurement operator K rho K^dagger."""
        k = self.kraus[(y, b)]
        return k @ state.matrix @ k.conj().T

    def outcome_probability(self, state: QubitState, y: Bit, b: Bit) -> float:
        return float(self.apply(state, y, b).trace().real)

    def post_state(self, state: QubitState, y: Bit, b: Bit) -> QubitState:
        out = self.apply(state, y, b)
        p = float(out.trace().real)
        if p <= 0.0:
            raise ValueError(f"outcome (y={y}, b={b}) has zero probability")
        return QubitState(out / p)


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """Charlie's projective measurements: effects keyed by (z, c)."""

    effects: dict[tuple[Bit, Bit], np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        for z in (0, 1):
            total = self.effects[(z, 0)] + self.effects[(z, 1)]
            if np.max(np.abs(total - ID2)) > TOL.completeness:
                raise ValueError(f"effects for z={z} do not sum to identity")

    def effect(self, z: Bit, c: Bit) -> np.ndarray:
        return self.effects[(z, c)]


def optimal_preparations() -> PreparationSet:
    """The four pure states forming a square on the xz great circle."""
    states = {
        (x0, x1): bloch_to_state(
            ((-1.0) ** x0 * INV_SQRT2, 0.0, (-1.0) ** x1 * INV_SQRT2)
        )
        for x0 in (0, 1)
        for x1 in (0, 1)
    }
    return PreparationSet(states)


def lueders_instrument(
    eta: float,
    axes: tuple[np.ndarray, np.ndarray],
    biases: tuple[float, float] = (0.0, 0.0),
) -> Instrument:
    """Instrument with Kraus operators K_{b|y} = sqrt((I + (-1)^b B_y) / 2).

    B_y = bias_y * I + eta * axis_y . sigma; each axis must be a unit vector.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"sharpness eta={eta} outside [0, 1]")
    observables = []
    for axis, bias in zip(axes, biases):
        axis = np.asarray(axis, dtype=float).reshape(3)
        if abs(np.linalg.norm(axis) - 1.0) > TOL.bloch_clamp:
            raise ValueError("instrument axes must be unit vectors")
        observables.append(Observable(bloch=eta * axis, bias=bias))
    kraus = {
        (y, b): psd_sqrt(observables[y].effect(b))
        for y in (0, 1)
        for b in (0, 1)
    }
    return Instrument(kraus=kraus, observables=tuple(observables))


def bob_instrument(
    eta: float, biased: tuple[float, float] | None = None
) -> Instrument:
    """Bob's optimal instrument: y=0 measures along x, y=1 along z."""
    biases = (0.0, 0.0) if biased is None else biased
    return lueders_instrument(eta, axes=(X_AXIS, Z_AXIS), biases=biases)


def charlie_measurements() -> MeasurementSet:
    """Two complementary projective measurements: z=0 -> sigma_x, z=1 -> sigma_z."""
    x_obs = Observable(bloch=X_AXIS)
    z_obs = Observable(bloch=Z_AXIS)
    effects = {
        (0, 0): x_obs.effect(0),
        (0, 1): x_obs.effect(1),
        (1, 0): z_obs.effect(0),
        (1, 1): z_obs.effect(1),
    }
    return MeasurementSet(effects=effects)


def eta_from_waveplate(theta_degrees: float) -> float:
    """Sharpness from the half-wave-plate angle, eta = cos(4 theta)."""
    if not 0.0 <= theta_degrees <= 22.5:
        raise ValueError(f"wave-plate angle {theta_degrees} outside [0, 22.5] degrees")
    return float(math.cos(4.0 * math.radians(theta_degrees)))
