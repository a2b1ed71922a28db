"""Service handlers: validated request model in, response model out.

The HTTP routes and the command-line client both call these functions, so
the two interfaces cannot drift apart.
"""

import math

import numpy as np

from ..certify import (
    WitnessPair,
    SharpnessInterval,
    bootstrap_witness_sigmas,
    certify_sharpness,
    compute_witnesses,
    optimal_tradeoff,
    projective_bound,
)
from ..constants import CLASSICAL_BOUND
from ..incompat import sequential_qrac_bound
from ..protocol import sample_counts
from ..report import (
    DEFAULT_THETA_GRID,
    optimal_protocol_spec,
    run_sweep,
    sig9,
    tradeoff_curves,
)
from ..qubit import Observable
from ..strategies import eta_from_waveplate
from ..tomography import TomographyScenario, worst_case_fidelity
from . import schemas

DEFAULT_SEED = 12345


def certify(request: schemas.CertifyRequest) -> schemas.CertifyResponse:
    pair = WitnessPair(
        w_ab=request.w_ab,
        w_ac=request.w_ac,
        sigma_ab=request.sigma_ab,
        sigma_ac=request.sigma_ac,
    )
    interval = certify_sharpness(pair)
    bounds = sequential_qrac_bound(pair, interval)
    warnings = []
    if not interval.consistent:
        warnings.append(
            "certified interval is inverted (eta_min > eta_max); "
            "incompatibility bounds use the sorted interval"
        )
    return schemas.CertifyResponse(
        witnesses=schemas.WitnessModel(**pair.to_dict()),
        interval=schemas.IntervalModel(
            eta_min=sig9(interval.eta_min),
            eta_max=sig9(interval.eta_max),
            sigma_min=_finite_or_none(interval.sigma_min),
            sigma_max=_finite_or_none(interval.sigma_max),
            consistent=interval.consistent,
        ),
        incompatibility=schemas.IncompatibilityModel(
            d_bob=sig9(bounds.d_bob),
            d_charlie=sig9(bounds.d_charlie),
            eta_argmin=sig9(bounds.eta_argmin),
            assumptions=bounds.to_dict()["assumptions"],
        ),
        warnings=warnings,
    )


def sweep(request: schemas.SweepRequest) -> schemas.SweepResponse:
    thetas = tuple(request.thetas) if request.thetas else DEFAULT_THETA_GRID
    rows = run_sweep(
        thetas=thetas,
        visibility=request.visibility,
        events_per_setting=request.events_per_setting,
        seed=request.seed if request.seed is not None else DEFAULT_SEED,
    )
    return schemas.SweepResponse(
        rows=[schemas.ReportRowModel(**row.to_dict()) for row in rows]
    )


def simulate(request: schemas.SimulateRequest) -> schemas.SimulateResponse:
    eta = (
        request.eta
        if request.eta is not None
        else eta_from_waveplate(request.theta_degrees)
    )
    seed = request.seed if request.seed is not None else DEFAULT_SEED
    spec = optimal_protocol_spec(eta, request.visibility)
    table = sample_counts(spec, request.events_per_setting, seed=seed)
    pair = compute_witnesses(table)
    counts = [
        schemas.CountRowModel(
            x0=i[0], x1=i[1], y=i[2], z=i[3], b=i[4], c=i[5],
            count=int(table.counts[i]),
        )
        for i in np.ndindex(table.counts.shape)
    ]
    boot_ab = boot_ac = None
    if request.bootstrap_replicates is not None:
        boot_ab, boot_ac = bootstrap_witness_sigmas(
            table, replicates=request.bootstrap_replicates, seed=seed
        )
    return schemas.SimulateResponse(
        eta=sig9(eta),
        visibility=request.visibility,
        events_per_setting=request.events_per_setting,
        seed=seed,
        counts=counts,
        witnesses=schemas.WitnessModel(
            w_ab=sig9(pair.w_ab),
            w_ac=sig9(pair.w_ac),
            sigma_ab=sig9(pair.sigma_ab),
            sigma_ac=sig9(pair.sigma_ac),
        ),
        bootstrap_sigma_ab=None if boot_ab is None else sig9(boot_ab),
        bootstrap_sigma_ac=None if boot_ac is None else sig9(boot_ac),
    )


def incompat(request: schemas.IncompatRequest) -> schemas.IncompatResponse:
    pair = WitnessPair(
        w_ab=request.w_ab,
        w_ac=request.w_ac,
        sigma_ab=request.sigma_ab,
        sigma_ac=request.sigma_ac,
    )
    if request.eta_min is not None:
        interval = SharpnessInterval(
            eta_min=request.eta_min,
            eta_max=request.eta_max,
            sigma_min=0.0,
            sigma_max=0.0,
            consistent=request.eta_min <= request.eta_max,
        )
    else:
        interval = certify_sharpness(pair)
    bounds = sequential_qrac_bound(pair, interval)
    warnings = []
    if not interval.consistent:
        warnings.append(
            "certified interval is inverted (eta_min > eta_max); "
            "incompatibility bounds use the sorted interval"
        )
    return schemas.IncompatResponse(
        incompatibility=schemas.IncompatibilityModel(
            d_bob=sig9(bounds.d_bob),
            d_charlie=sig9(bounds.d_charlie),
            eta_argmin=sig9(bounds.eta_argmin),
            assumptions=bounds.to_dict()["assumptions"],
        ),
        interval=schemas.IntervalModel(
            eta_min=sig9(interval.eta_min),
            eta_max=sig9(interval.eta_max),
            sigma_min=_finite_or_none(interval.sigma_min),
            sigma_max=_finite_or_none(interval.sigma_max),
            consistent=interval.consistent,
        ),
        warnings=warnings,
    )


def tomography(request: schemas.TomographyRequest) -> schemas.TomographyResponse:
    seed = request.seed if request.seed is not None else DEFAULT_SEED
    rows = []
    for eta in request.eta_grid:
        scenario = TomographyScenario(
            observable=Observable(bloch=np.array([0.0, 0.0, float(eta)])),
            epsilon=request.epsilon,
        )
        result = worst_case_fidelity(
            scenario, restarts=request.restarts, seed=seed
        )
        rows.append(
            schemas.TomographyRowModel(
                eta_lab=sig9(float(eta)),
                epsilon=request.epsilon,
                f_min=sig9(result.f_min),
                eta_est=sig9(result.eta_est),
                eta_error=sig9(result.eta_error),
                lab_bloch=[
                    [sig9(float(v)) for v in row] for row in result.lab_bloch()
                ],
            )
        )
    return schemas.TomographyResponse(rows=rows)


def projective(request: schemas.ProjectiveBoundRequest) -> schemas.ProjectiveBoundResponse:
    if request.w_ab is not None:
        rows = [
            schemas.CurveRowModel(
                w_ab=sig9(request.w_ab),
                w_ac_optimal=sig9(optimal_tradeoff(request.w_ab)),
                w_ac_projective=sig9(projective_bound(request.w_ab)),
                w_ac_classical=CLASSICAL_BOUND,
            )
        ]
    else:
        rows = [schemas.CurveRowModel(**row) for row in tradeoff_curves(request.points)]
    return schemas.ProjectiveBoundResponse(rows=rows)


def _finite_or_none(value: float) -> float | None:
    return sig9(value) if math.isfinite(value) else None
