"""Pydantic request/response models for the certification service."""

from pydantic import BaseModel, Field, model_validator


class WitnessModel(BaseModel):
    w_ab: float = Field(ge=0.0, le=1.0)
    w_ac: float = Field(ge=0.0, le=1.0)
    sigma_ab: float = Field(default=0.0, ge=0.0)
    sigma_ac: float = Field(default=0.0, ge=0.0)


class IntervalModel(BaseModel):
    eta_min: float
    eta_max: float
    sigma_min: float | None = None
    sigma_max: float | None = None
    consistent: bool


class IncompatibilityModel(BaseModel):
    d_bob: float
    d_charlie: float
    eta_argmin: float
    assumptions: list[str]


class CertifyRequest(WitnessModel):
    pass


class CertifyResponse(BaseModel):
    witnesses: WitnessModel
    interval: IntervalModel
    incompatibility: IncompatibilityModel
    warnings: list[str]


class SweepRequest(BaseModel):
    thetas: list[float] | None = None
    visibility: float = Field(default=1.0, ge=0.0, le=1.0)
    events_per_setting: int | None = Field(default=None, gt=0)
    seed: int | None = None


class ReportRowModel(BaseModel):
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


class SweepResponse(BaseModel):
    rows: list[ReportRowModel]


class SimulateRequest(BaseModel):
    eta: float | None = Field(default=None, ge=0.0, le=1.0)
    theta_degrees: float | None = Field(default=None, ge=0.0, le=22.5)
    visibility: float = Field(default=1.0, ge=0.0, le=1.0)
    events_per_setting: int = Field(gt=0)
    seed: int | None = None
    # optional resampling cross-check of the analytic witness errors
    bootstrap_replicates: int | None = Field(default=None, ge=2, le=10_000)

    @model_validator(mode="after")
    def _exactly_one_sharpness(self):
        if (self.eta is None) == (self.theta_degrees is None):
            raise ValueError("provide exactly one of eta or theta_degrees")
        return self


class CountRowModel(BaseModel):
    x0: int
    x1: int
    y: int
    z: int
    b: int
    c: int
    count: int


class SimulateResponse(BaseModel):
    eta: float
    visibility: float
    events_per_setting: int
    seed: int
    counts: list[CountRowModel]
    witnesses: WitnessModel
    bootstrap_sigma_ab: float | None = None
    bootstrap_sigma_ac: float | None = None


class IncompatRequest(BaseModel):
    """Witness-based bounds; the interval is derived when not supplied."""

    w_ab: float = Field(ge=0.0, le=1.0)
    w_ac: float = Field(ge=0.0, le=1.0)
    sigma_ab: float = Field(default=0.0, ge=0.0)
    sigma_ac: float = Field(default=0.0, ge=0.0)
    eta_min: float | None = Field(default=None, ge=0.0, le=1.0)
    eta_max: float | None = Field(default=None, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _interval_complete(self):
        if (self.eta_min is None) != (self.eta_max is None):
            raise ValueError("provide both eta_min and eta_max or neither")
        return self


class IncompatResponse(BaseModel):
    incompatibility: IncompatibilityModel
    interval: IntervalModel
    warnings: list[str]


class TomographyRequest(BaseModel):
    epsilon: float = Field(ge=0.0, le=1.0)
    eta_grid: list[float]
    restarts: int = Field(default=64, ge=1)
    seed: int | None = None


class TomographyRowModel(BaseModel):
    eta_lab: float
    epsilon: float
    f_min: float
    eta_est: float
    eta_error: float
    # Bloch vectors of the probe states achieving the worst case (JSON only)
    lab_bloch: list[list[float]]


class TomographyResponse(BaseModel):
    rows: list[TomographyRowModel]


class ProjectiveBoundRequest(BaseModel):
    w_ab: float | None = Field(default=None, ge=0.5)
    points: int | None = Field(default=None, ge=2, le=2000)

    @model_validator(mode="after")
    def _one_mode(self):
        if (self.w_ab is None) == (self.points is None):
            raise ValueError("provide exactly one of w_ab or points")
        return self


class CurveRowModel(BaseModel):
    w_ab: float
    w_ac_optimal: float
    w_ac_projective: float
    w_ac_classical: float


class ProjectiveBoundResponse(BaseModel):
    rows: list[CurveRowModel]
