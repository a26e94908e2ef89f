"""Request and response models for the HTTP service.

The wire format mirrors the core dataclasses: parameters and gate
placement in, flat tables and scalar reports out.  Density matrices
travel as separate real and imaginary 4x4 arrays so the payload stays
plain JSON.  Unknown fields are rejected, matching the strictness of
the file-based configuration.
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..experiments import PresetArtifact, RunPointResult, SweepResult
from ..metrics import EsdResult
from ..model import CascadeParams
from ..validation import CheckResult


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ParamsModel(StrictModel):
    """Cascade parameters; defaults are the headline parameter set."""

    gamma32: float = 1.8
    gamma31: float = 1.8
    gamma20: float = 1.3
    gamma10: float = 1.3
    fss: float = 2.5
    temperature: float = 10.0
    kappa0: float = 2.0e-5
    eta: float = 0.91
    g_noise: float = 0.45
    biexciton_energy: float = 0.0

    def to_params(self) -> CascadeParams:
        return CascadeParams(**self.model_dump())


class GateModel(StrictModel):
    """Gate placement plus optional explicit grid steps."""

    tau_g: float = 0.0
    w_g: float = 0.049
    t_max: float | None = None
    dt_outer: float | None = None
    dt_inner: float | None = None


class AxisModel(StrictModel):
    """One sweep axis: explicit values or an evenly spaced range."""

    parameter: str
    values: list[float] | None = None
    start: float | None = None
    stop: float | None = None
    count: int | None = None

    def to_mapping(self) -> dict:
        data: dict = {"parameter": self.parameter}
        if self.values is not None:
            data["values"] = self.values
        for key in ("start", "stop", "count"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        return data


class MatrixModel(StrictModel):
    """4x4 complex matrix as real and imaginary parts."""

    re: list[list[float]]
    im: list[list[float]]

    @classmethod
    def from_array(cls, m: np.ndarray) -> "MatrixModel":
        m = np.asarray(m, dtype=complex)
        return cls(re=m.real.tolist(), im=m.imag.tolist())

    def to_array(self) -> np.ndarray:
        return np.asarray(self.re, dtype=float) + 1j * np.asarray(self.im, dtype=float)


class ReportModel(StrictModel):
    concurrence: float
    fidelity: float
    purity: float
    lambdas: tuple[float, float, float, float]


class SimulateRequest(StrictModel):
    params: ParamsModel = ParamsModel()
    gate: GateModel = GateModel()


class GateEcho(StrictModel):
    """Grid actually used, with the derived steps filled in."""

    tau_g: float
    w_g: float
    t_max: float
    dt_outer: float
    dt_inner: float


class SimulateResponse(StrictModel):
    report: ReportModel
    rho_total: MatrixModel
    rho_raw: MatrixModel
    gate: GateEcho

    @classmethod
    def from_result(cls, point: RunPointResult) -> "SimulateResponse":
        return cls(
            report=ReportModel(
                concurrence=point.report.concurrence,
                fidelity=point.report.fidelity,
                purity=point.report.purity,
                lambdas=point.report.lambdas,
            ),
            rho_total=MatrixModel.from_array(point.rho_total),
            rho_raw=MatrixModel.from_array(point.rho_raw),
            gate=GateEcho(
                tau_g=point.gate.tau_g,
                w_g=point.gate.w_g,
                t_max=point.gate.t_max,
                dt_outer=point.gate.dt_outer,
                dt_inner=point.gate.dt_inner,
            ),
        )


class SweepRequest(StrictModel):
    params: ParamsModel = ParamsModel()
    gate: GateModel = GateModel()
    axes: list[AxisModel]
    outputs: list[str] = ["concurrence", "fidelity"]
    workers: int | None = None


class TableModel(StrictModel):
    """Flat result table; axis columns lead the header."""

    header: list[str]
    axis_names: list[str]
    rows: list[list[float]]

    @classmethod
    def from_result(cls, result: SweepResult) -> "TableModel":
        return cls(
            header=list(result.header),
            axis_names=list(result.axis_names),
            rows=[list(row) for row in result.rows],
        )

    def to_result(self) -> SweepResult:
        return SweepResult(
            header=tuple(self.header),
            rows=tuple(tuple(r) for r in self.rows),
            axis_names=tuple(self.axis_names),
        )


class EsdRequest(StrictModel):
    params: ParamsModel = ParamsModel()
    tau_g: float = 0.5
    w_g: float = 0.1
    t_min: float = 1.0
    t_max: float = 150.0
    coarse_step: float = 2.0
    tol: float = 0.01


class EsdResponse(StrictModel):
    fss: float
    g_noise: float
    found: bool
    temperature: float | None
    bracket: tuple[float, float] | None
    tolerance: float
    multi_crossing: bool
    t_min: float
    t_max: float
    evaluations: int
    coarse_temperatures: list[float]
    coarse_concurrences: list[float]

    @classmethod
    def from_result(cls, res: EsdResult) -> "EsdResponse":
        return cls(
            fss=res.fss,
            g_noise=res.g_noise,
            found=res.found,
            temperature=res.temperature,
            bracket=res.bracket,
            tolerance=res.tolerance,
            multi_crossing=res.multi_crossing,
            t_min=res.t_min,
            t_max=res.t_max,
            evaluations=res.evaluations,
            coarse_temperatures=[float(t) for t in res.coarse_temperatures],
            coarse_concurrences=[float(c) for c in res.coarse_concurrences],
        )


class ValidateRequest(StrictModel):
    samples: int = 1000
    seed: int = 20240811


class CheckModel(StrictModel):
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str

    @classmethod
    def from_result(cls, res: CheckResult) -> "CheckModel":
        return cls(
            name=res.name,
            passed=res.passed,
            worst=res.worst,
            tolerance=res.tolerance,
            detail=res.detail,
        )


class ValidateResponse(StrictModel):
    passed: bool
    checks: list[CheckModel]


class ArtifactModel(StrictModel):
    name: str
    title: str
    svg_kind: str
    table: TableModel

    @classmethod
    def from_artifact(cls, art: PresetArtifact) -> "ArtifactModel":
        return cls(
            name=art.name,
            title=art.title,
            svg_kind=art.svg_kind,
            table=TableModel.from_result(art.result),
        )


class FigureResponse(StrictModel):
    preset: str
    artifacts: list[ArtifactModel]


class FigureListResponse(StrictModel):
    presets: list[str]


class HealthResponse(StrictModel):
    status: str
    version: str


class ErrorResponse(StrictModel):
    error_type: str
    message: str
