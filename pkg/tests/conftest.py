"""Shared fixtures and strategy helpers for the test suite."""

from seqrac.protocol import ProtocolSpec
from seqrac.qubit import Observable, Z_AXIS, bloch_to_state
from seqrac.strategies import MeasurementSet, PreparationSet, lueders_instrument


def classical_strategy_spec() -> ProtocolSpec:
    """Best classical protocol: Alice always encodes x0 along z, both readers
    measure z.  Reaches exactly (3/4, 3/4)."""
    states = {
        (x0, x1): bloch_to_state((0.0, 0.0, (-1.0) ** x0))
        for x0 in (0, 1)
        for x1 in (0, 1)
    }
    z_obs = Observable(bloch=Z_AXIS)
    read_z_always = MeasurementSet(
        effects={(z, c): z_obs.effect(c) for z in (0, 1) for c in (0, 1)}
    )
    return ProtocolSpec(
        preparations=PreparationSet(states),
        instrument=lueders_instrument(1.0, axes=(Z_AXIS, Z_AXIS)),
        measurements=read_z_always,
    )
