"""Exact three-party statistics p(b,c|x,y,z) and shot-noise sampling.

The joint distribution is stored as a (2,2,2,2,2,2) array indexed
[x0, x1, y, z, b, c].  The sampler gives each of the 16 input settings
(x0, x1, y, z) an independent Poisson event budget with the requested mean
and splits it over the outcome cells; equivalently each of the 32 output
blocks (x0, x1, y, z, b) draws its two counter cells from an independent,
seeded substream, so results do not depend on execution order.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from .constants import TOL
from .qubit import ID2, QubitState
from .strategies import Instrument, MeasurementSet, PreparationSet

SHAPE = (2, 2, 2, 2, 2, 2)
CSV_HEADER = ["x0", "x1", "y", "z", "b", "c", "count"]


@dataclass(frozen=True, eq=False)
class ProtocolSpec:
    """Full description of one run: preparations, instrument, measurements, visibility."""

    preparations: PreparationSet
    instrument: Instrument
    measurements: MeasurementSet
    visibility: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.visibility <= 1.0:
            raise ValueError(f"visibility {self.visibility} outside [0, 1]")

    def degraded_preparation(self, x0: int, x1: int) -> QubitState:
        """Preparation after depolarizing noise rho -> v rho + (1-v) I/2."""
        rho = self.preparations.state(x0, x1).matrix
        v = self.visibility
        return QubitState(v * rho + (1.0 - v) * 0.5 * ID2)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Conditional distribution p(b,c|x,y,z) for all 16 settings."""

    p: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        if arr.shape != SHAPE:
            raise ValueError(f"expected shape {SHAPE}, got {arr.shape}")
        object.__setattr__(self, "p", arr)
        totals = arr.sum(axis=(4, 5))
        if np.max(np.abs(totals - 1.0)) > TOL.normalization:
            raise ValueError("p(b,c|x,y,z) does not normalize per setting")

    def prob(self, x0, x1, y, z, b, c) -> float:
        return float(self.p[x0, x1, y, z, b, c])

    def bob_marginal(self, x0, x1, y, b) -> float:
        """P(b|x,y), averaged over Charlie's input z."""
        return float(self.p[x0, x1, y, :, b, :].sum() / 2.0)

    def charlie_marginal(self, x0, x1, z, c) -> float:
        """P(c|x,z), averaged over Bob's input y and output b."""
        return float(self.p[x0, x1, :, z, :, c].sum() / 2.0)

    def to_json_dict(self) -> dict[str, float]:
        """Keys are the concatenated bits 'x0 x1 y z b c', e.g. '010100'."""
        out = {}
        for idx in np.ndindex(SHAPE):
            out["".join(str(i) for i in idx)] = float(self.p[idx])
        return out

    @classmethod
    def from_json_dict(cls, data: dict[str, float]) -> "JointDistribution":
        arr = np.zeros(SHAPE)
        for key, value in data.items():
            idx = tuple(int(ch) for ch in key)
            arr[idx] = float(value)
        return cls(arr)


@dataclass(frozen=True, eq=False)
class CountTable:
    """Observed event counts per outcome cell, plus the per-setting budget."""

    counts: np.ndarray
    events_per_setting: int

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.shape != SHAPE:
            raise ValueError(f"expected shape {SHAPE}, got {arr.shape}")
        if np.any(arr < 0):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", arr)

    def setting_totals(self) -> np.ndarray:
        """Total events per input setting (x0, x1, y, z)."""
        return self.counts.sum(axis=(4, 5))

    def frequencies(self) -> JointDistribution:
        totals = self.setting_totals()
        if np.any(totals == 0):
            raise ValueError("at least one setting recorded zero events")
        return JointDistribution(self.counts / totals[..., None, None])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for idx in np.ndindex(SHAPE):
            writer.writerow(list(idx) + [int(self.counts[idx])])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, events_per_setting: int = 0) -> "CountTable":
        arr = np.zeros(SHAPE, dtype=np.int64)
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        for row in reader:
            if not row:
                continue
            idx = tuple(int(v) for v in row[:6])
            arr[idx] = int(row[6])
        return cls(arr, events_per_setting)


def exact_distribution(spec: ProtocolSpec) -> JointDistribution:
    """p(b,c|x,y,z) = Tr(C_{c|z} K_{b|y} rho_x K_{b|y}^dagger) with noisy preparations."""
    p = np.zeros(SHAPE)
    for x0 in (0, 1):
        for x1 in (0, 1):
            rho = spec.degraded_preparation(x0, x1)
            for y in (0, 1):
                for b in (0, 1):
                    post = spec.instrument.apply(rho, y, b)
                    for z in (0, 1):
                        for c in (0, 1):
                            effect = spec.measurements.effect(z, c)
                            p[x0, x1, y, z, b, c] = float(
                                (effect @ post).trace().real
                            )
    return JointDistribution(p)


def average_post_measurement_state(spec: ProtocolSpec, x: tuple[int, int]) -> QubitState:
    """Average state relayed to Charlie: (1/2) sum_{y,b} K rho K^dagger."""
    rho = spec.degraded_preparation(*x)
    total = np.zeros((2, 2), dtype=complex)
    for y in (0, 1):
        for b in (0, 1):
            total += spec.instrument.apply(rho, y, b)
    return QubitState(total / 2.0)


def sample_counts(spec: ProtocolSpec, events_per_setting: int, seed: int) -> CountTable:
    """Simulate Poissonian counting with a fixed per-setting event budget.

    Each outcome cell (x0,x1,y,z,b,c) is an independent Poisson draw with mean
    events_per_setting * p(b,c|x,y,z); the substream for block (x0,x1,y,z,b)
    is seeded as (seed, block_index), so totals per setting are Poisson with
    mean events_per_setting and the table is reproducible regardless of
    evaluation order.
    """
    if events_per_setting <= 0:
        raise ValueError(f"events_per_setting must be positive, got {events_per_setting}")
    dist = exact_distribution(spec)
    counts = np.zeros(SHAPE, dtype=np.int64)
    for block, (x0, x1, y, z, b) in enumerate(np.ndindex(2, 2, 2, 2, 2)):
        rng = np.random.default_rng([seed, block])
        means = events_per_setting * dist.p[x0, x1, y, z, b, :]
        counts[x0, x1, y, z, b, :] = rng.poisson(means)
    return CountTable(counts, events_per_setting)
