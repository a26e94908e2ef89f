"""HTTP service exposing the simulation pipeline.

Thin translation layer: each endpoint converts its request model to core
types, calls one core function, and wraps the result.  Domain errors map
to structured JSON bodies — parameter problems to 400, numerical
validity problems to 500 — with an ``error_type`` field the CLI uses to
pick its exit code.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..correlator import GateWindow
from ..errors import NumericalError, ParameterError
from ..experiments import PRESET_NAMES, run_point, run_preset, run_sweep, SweepSpec
from ..config import axis_from_mapping
from ..metrics import esd_temperature
from ..validation import run_validation
from .schemas import (
    ArtifactModel,
    CheckModel,
    EsdRequest,
    EsdResponse,
    FigureListResponse,
    FigureResponse,
    HealthResponse,
    SimulateRequest,
    SimulateResponse,
    SweepRequest,
    TableModel,
    ValidateRequest,
    ValidateResponse,
)

__all__ = ["create_app"]


def create_app() -> FastAPI:
    app = FastAPI(title="qdcascade", version=__version__)

    @app.exception_handler(ParameterError)
    async def _parameter_error(request: Request, exc: ParameterError):
        return JSONResponse(
            status_code=400,
            content={"error_type": "parameter", "message": str(exc)},
        )

    @app.exception_handler(NumericalError)
    async def _numerical_error(request: Request, exc: NumericalError):
        return JSONResponse(
            status_code=500,
            content={"error_type": "numerical", "message": str(exc)},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        params = req.params.to_params()
        gate = GateWindow.auto(
            params,
            req.gate.tau_g,
            req.gate.w_g,
            t_max=req.gate.t_max,
            dt_outer=req.gate.dt_outer,
            dt_inner=req.gate.dt_inner,
        )
        return SimulateResponse.from_result(run_point(params, gate))

    @app.post("/sweep", response_model=TableModel)
    def sweep(req: SweepRequest) -> TableModel:
        axes = tuple(
            axis_from_mapping(a.to_mapping(), i) for i, a in enumerate(req.axes)
        )
        spec = SweepSpec(
            axes=axes,
            base=req.params.to_params(),
            tau_g=req.gate.tau_g,
            w_g=req.gate.w_g,
            outputs=tuple(req.outputs),
            t_max=req.gate.t_max,
            dt_outer=req.gate.dt_outer,
            dt_inner=req.gate.dt_inner,
        )
        return TableModel.from_result(run_sweep(spec, workers=req.workers))

    @app.post("/esd", response_model=EsdResponse)
    def esd(req: EsdRequest) -> EsdResponse:
        params = req.params.to_params()
        gate = GateWindow.auto(params, req.tau_g, req.w_g)
        result = esd_temperature(
            params,
            gate,
            t_range=(req.t_min, req.t_max),
            coarse_step=req.coarse_step,
            tol=req.tol,
        )
        return EsdResponse.from_result(result)

    @app.get("/figures", response_model=FigureListResponse)
    def figures() -> FigureListResponse:
        return FigureListResponse(presets=list(PRESET_NAMES))

    @app.post("/figures/{preset}", response_model=FigureResponse)
    def figure(preset: str) -> FigureResponse:
        artifacts = run_preset(preset)
        return FigureResponse(
            preset=preset,
            artifacts=[ArtifactModel.from_artifact(a) for a in artifacts],
        )

    @app.post("/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest) -> ValidateResponse:
        checks = run_validation(samples=req.samples, seed=req.seed)
        return ValidateResponse(
            passed=all(c.passed for c in checks),
            checks=[CheckModel.from_result(c) for c in checks],
        )

    return app
