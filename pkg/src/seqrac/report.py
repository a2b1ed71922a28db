"""Sweep orchestration and machine-readable reports (CSV and JSON).

All emitted numbers are rounded to nine significant digits at row
construction, so a parsed file reproduces the in-memory report exactly.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, fields

import numpy as np

from .certify import (
    WitnessPair,
    certify_sharpness,
    compute_witnesses,
    ideal_witness_pair,
    optimal_tradeoff,
    projective_bound,
)
from .constants import CLASSICAL_BOUND
from .incompat import sequential_qrac_bound
from .protocol import ProtocolSpec, exact_distribution, sample_counts
from .strategies import (
    bob_instrument,
    charlie_measurements,
    eta_from_waveplate,
    optimal_preparations,
)

DEFAULT_THETA_GRID = (0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0, 22.5)


def sig9(x: float) -> float:
    """Round to nine significant digits (idempotent under serialization)."""
    if x is None or not math.isfinite(x):
        return x
    return float(f"{x:.9g}")


@dataclass(frozen=True)
class ReportRow:
    """One sweep row: settings, witnesses, certified interval, incompatibility."""

    theta: float
    eta_target: float
    w_ab: float
    w_ac: float
    sigma_ab: float
    sigma_ac: float
    eta_min: float
    eta_max: float
    interval_width: float
    d_bob: float
    d_charlie: float

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


REPORT_COLUMNS = [f.name for f in fields(ReportRow)]


def optimal_protocol_spec(eta: float, visibility: float = 1.0) -> ProtocolSpec:
    return ProtocolSpec(
        preparations=optimal_preparations(),
        instrument=bob_instrument(eta),
        measurements=charlie_measurements(),
        visibility=visibility,
    )


def _row_from_witnesses(theta: float, eta: float, pair: WitnessPair) -> ReportRow:
    interval = certify_sharpness(pair)
    bounds = sequential_qrac_bound(pair, interval)
    eta_min, eta_max = sig9(interval.eta_min), sig9(interval.eta_max)
    return ReportRow(
        theta=sig9(theta),
        eta_target=sig9(eta),
        w_ab=sig9(pair.w_ab),
        w_ac=sig9(pair.w_ac),
        sigma_ab=sig9(pair.sigma_ab),
        sigma_ac=sig9(pair.sigma_ac),
        eta_min=eta_min,
        eta_max=eta_max,
        # from the rounded bounds, so emitted rows are internally coherent
        interval_width=sig9(eta_max - eta_min),
        d_bob=sig9(bounds.d_bob),
        d_charlie=sig9(bounds.d_charlie),
    )


def run_sweep(
    thetas=DEFAULT_THETA_GRID,
    visibility: float = 1.0,
    events_per_setting: int | None = None,
    seed: int = 0,
) -> list[ReportRow]:
    """One report row per wave-plate angle.

    With ``events_per_setting`` unset the witnesses are the exact analytic
    values; otherwise they are estimated from a Poissonian count table whose
    per-angle substream is derived from ``seed``.
    """
    rows = []
    for k, theta in enumerate(thetas):
        eta = eta_from_waveplate(theta)
        spec = optimal_protocol_spec(eta, visibility)
        if events_per_setting is None:
            pair = compute_witnesses(exact_distribution(spec))
        else:
            table = sample_counts(spec, events_per_setting, seed=seed + k)
            pair = compute_witnesses(table)
        rows.append(_row_from_witnesses(theta, eta, pair))
    return rows


def certification_report(
    w_ab: float, w_ac: float, sigma_ab: float = 0.0, sigma_ac: float = 0.0
) -> dict:
    """Full certification chain for one witness pair, as a JSON-ready dict."""
    pair = WitnessPair(w_ab=w_ab, w_ac=w_ac, sigma_ab=sigma_ab, sigma_ac=sigma_ac)
    interval = certify_sharpness(pair)
    bounds = sequential_qrac_bound(pair, interval)
    warnings = []
    if not interval.consistent:
        warnings.append(
            "certified interval is inverted (eta_min > eta_max); "
            "incompatibility bounds use the sorted interval"
        )
    report = {
        "w_ab": w_ab,
        "w_ac": w_ac,
        "sigma_ab": sigma_ab,
        "sigma_ac": sigma_ac,
        "eta_min": interval.eta_min,
        "eta_max": interval.eta_max,
        "sigma_eta_min": interval.sigma_min,
        "sigma_eta_max": interval.sigma_max,
        "consistent": interval.consistent,
        "d_bob": bounds.d_bob,
        "d_charlie": bounds.d_charlie,
        "eta_argmin": bounds.eta_argmin,
        "assumptions": bounds.to_dict()["assumptions"],
        "warnings": warnings,
    }
    # non-finite sigmas (diverging first-order propagation) become null
    return {
        key: (
            (sig9(value) if math.isfinite(value) else None)
            if isinstance(value, float)
            else value
        )
        for key, value in report.items()
    }


def tradeoff_curves(points: int = 200) -> list[dict]:
    """Quantum-optimal, projective-simulation and classical boundary curves.

    One row per W_AB grid point, ready for CSV export and plotting.
    """
    grid = np.linspace(0.5, (2.0 + math.sqrt(2.0)) / 4.0, points)
    rows = []
    for w in grid:
        rows.append(
            {
                "w_ab": sig9(float(w)),
                "w_ac_optimal": sig9(optimal_tradeoff(float(w))),
                "w_ac_projective": sig9(projective_bound(float(w))),
                "w_ac_classical": CLASSICAL_BOUND,
            }
        )
    return rows


def ideal_curve(points: int = 101) -> list[dict]:
    """The exact witness pair as a function of sharpness."""
    rows = []
    for eta in np.linspace(0.0, 1.0, points):
        w_ab, w_ac = ideal_witness_pair(float(eta))
        rows.append({"eta": sig9(float(eta)), "w_ab": sig9(w_ab), "w_ac": sig9(w_ac)})
    return rows


def rows_to_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if not rows:
        raise ValueError("nothing to serialize")
    columns = columns or list(rows[0].keys())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(row[c]) for c in columns])
    return buf.getvalue()


def _format_cell(value):
    if isinstance(value, float):
        return f"{value:.9g}"
    return value


def report_rows_to_csv(rows: list[ReportRow]) -> str:
    return rows_to_csv([r.to_dict() for r in rows], REPORT_COLUMNS)


def report_rows_from_csv(text: str) -> list[ReportRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != REPORT_COLUMNS:
        raise ValueError(f"unexpected sweep CSV header {reader.fieldnames}")
    return [
        ReportRow(**{name: float(record[name]) for name in REPORT_COLUMNS})
        for record in reader
    ]


def report_rows_to_json(rows: list[ReportRow]) -> str:
    return json.dumps({"rows": [r.to_dict() for r in rows]}, indent=2)


def report_rows_from_json(text: str) -> list[ReportRow]:
    data = json.loads(text)
    return [ReportRow(**record) for record in data["rows"]]
