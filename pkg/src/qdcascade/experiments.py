"""Single-point runs, parameter sweeps, and the named figure presets.

A sweep walks a 1-D or 2-D grid of parameter values, evaluates the full
pipeline at every node, and collects the requested metrics into a flat
table (axis columns first, then metrics, rows in row-major axis order).
Grid nodes are independent; they are evaluated by a thread pool and
reassembled in declared order, so results do not depend on scheduling.

Presets pin the grids behind the bundled figure reproductions.  Where
the underlying plot ranges are not published, the grids documented here
are this package's own choices.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .correlator import GateWindow, assemble_raw_matrix
from .errors import CascadeError, ParameterError
from .metrics import EntanglementReport, esd_temperature
from .model import CascadeParams, build_liouvillian
from .tomography import mix_total

__all__ = [
    "AXIS_PARAMETERS",
    "METRIC_NAMES",
    "RunPointResult",
    "run_point",
    "SweepAxis",
    "SweepSpec",
    "SweepResult",
    "run_sweep",
    "PresetArtifact",
    "PRESET_NAMES",
    "run_preset",
]

#: Parameters a sweep axis may vary: every cascade parameter plus the
#: gate placement.
AXIS_PARAMETERS = (
    "gamma32",
    "gamma31",
    "gamma20",
    "gamma10",
    "fss",
    "temperature",
    "kappa0",
    "eta",
    "g_noise",
    "biexciton_energy",
    "tau_g",
    "w_g",
)

#: Metric columns a sweep may request.  "diag" expands to the four
#: coincidence probabilities of the detected state.
METRIC_NAMES = ("concurrence", "fidelity", "purity", "rho14_abs", "rho14_arg", "diag")

_DIAG_COLUMNS = ("diag_hh", "diag_hv", "diag_vh", "diag_vv")


@dataclass(frozen=True)
class RunPointResult:
    """Everything produced at one parameter point: the detected state,
    the unmixed gate-integrated matrix, and the scalar report."""

    params: CascadeParams
    gate: GateWindow
    report: EntanglementReport
    rho_total: np.ndarray = field(repr=False)
    rho_raw: np.ndarray = field(repr=False)


def run_point(params: CascadeParams, gate: GateWindow | None = None) -> RunPointResult:
    """Evaluate the full pipeline at a single parameter point.

    Errors from inner stages are re-raised with the parameter point
    attached, so a failure inside a sweep identifies its node.
    """
    if gate is None:
        gate = GateWindow.auto(params)
    try:
        gate.validate_against(params)
        lio = build_liouvillian(params)
        raw = assemble_raw_matrix(lio, None, gate)
        rho_total = mix_total(raw.entries, params.eta, params.g_noise)
        report = EntanglementReport.from_state(rho_total)
    except CascadeError as exc:
        note = (
            f"fss={params.fss}, T={params.temperature}, "
            f"tau_g={gate.tau_g}, w_g={gate.w_g}"
        )
        raise type(exc)(f"{exc} (at {note})") from exc
    return RunPointResult(
        params=params,
        gate=gate,
        report=report,
        rho_total=rho_total,
        rho_raw=raw.entries,
    )


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter with its explicit value list."""

    parameter: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.parameter not in AXIS_PARAMETERS:
            raise ParameterError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"valid: {', '.join(AXIS_PARAMETERS)}"
            )
        if len(self.values) == 0:
            raise ParameterError(f"axis {self.parameter!r} has no values")
        for v in self.values:
            if not math.isfinite(v):
                raise ParameterError(f"axis {self.parameter!r} has non-finite value {v}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition: axes to vary, the base point, and the metrics
    to record.  ``tau_g``/``w_g`` set the gate unless an axis varies
    them; explicit grid steps override the per-node automatic ones."""

    axes: tuple[SweepAxis, ...]
    base: CascadeParams = CascadeParams()
    tau_g: float = 0.0
    w_g: float = 0.049
    outputs: tuple[str, ...] = ("concurrence", "fidelity")
    t_max: float | None = None
    dt_outer: float | None = None
    dt_inner: float | None = None

    def __post_init__(self) -> None:
        if not 1 <= len(self.axes) <= 2:
            raise ParameterError(f"sweeps support 1 or 2 axes, got {len(self.axes)}")
        names = [a.parameter for a in self.axes]
        if len(set(names)) != len(names):
            raise ParameterError(f"duplicate sweep axes: {names}")
        if len(self.outputs) == 0:
            raise ParameterError("at least one output metric is required")
        for name in self.outputs:
            if name not in METRIC_NAMES:
                raise ParameterError(
                    f"unknown metric {name!r}; valid: {', '.join(METRIC_NAMES)}"
                )


@dataclass(frozen=True)
class SweepResult:
    """Flat result table: axis columns first, then metric columns;
    one row per grid node in row-major order over the declared axes."""

    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    axis_names: tuple[str, ...]

    def column(self, name: str) -> np.ndarray:
        if name not in self.header:
            raise ParameterError(f"no column {name!r} in result (have {self.header})")
        idx = self.header.index(name)
        return np.array([row[idx] for row in self.rows])


def _metric_header(outputs: tuple[str, ...]) -> tuple[str, ...]:
    cols: list[str] = []
    for name in outputs:
        cols.extend(_DIAG_COLUMNS if name == "diag" else (name,))
    return tuple(cols)


def _metric_values(outputs: tuple[str, ...], point: RunPointResult) -> tuple[float, ...]:
    rho = point.rho_total
    vals: list[float] = []
    for name in outputs:
        if name == "concurrence":
            vals.append(point.report.concurrence)
        elif name == "fidelity":
            vals.append(point.report.fidelity)
        elif name == "purity":
            vals.append(point.report.purity)
        elif name == "rho14_abs":
            vals.append(abs(rho[0, 3]))
        elif name == "rho14_arg":
            vals.append(math.atan2(rho[0, 3].imag, rho[0, 3].real))
        else:  # diag
            vals.extend(rho[i, i].real for i in range(4))
    return tuple(float(v) for v in vals)


def _node_point(spec: SweepSpec, coords: tuple[float, ...]) -> RunPointResult:
    params = spec.base
    tau_g, w_g = spec.tau_g, spec.w_g
    for axis, value in zip(spec.axes, coords):
        if axis.parameter == "tau_g":
            tau_g = value
        elif axis.parameter == "w_g":
            w_g = value
        else:
            params = params.replace(**{axis.parameter: value})
    gate = GateWindow.auto(
        params,
        tau_g,
        w_g,
        t_max=spec.t_max,
        dt_outer=spec.dt_outer,
        dt_inner=spec.dt_inner,
    )
    return run_point(params, gate)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepResult:
    """Evaluate the pipeline over the grid and collect the metric table.

    A failing node aborts the whole sweep; its error carries the node's
    coordinates.  ``workers`` bounds the thread pool (default: CPU
    count); the output is identical for any worker count.
    """
    grids = [axis.values for axis in spec.axes]
    nodes: list[tuple[float, ...]] = []
    if len(grids) == 1:
        nodes = [(v,) for v in grids[0]]
    else:
        nodes = [(a, b) for a in grids[0] for b in grids[1]]

    def evaluate(coords: tuple[float, ...]) -> tuple[float, ...]:
        try:
            point = _node_point(spec, coords)
        except CascadeError as exc:
            labels = ", ".join(
                f"{axis.parameter}={value}" for axis, value in zip(spec.axes, coords)
            )
            raise type(exc)(f"sweep node ({labels}) failed: {exc}") from exc
        return coords + _metric_values(spec.outputs, point)

    if workers is None:
        workers = min(8, os.cpu_count() or 1)
    if workers > 1 and len(nodes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(evaluate, nodes))
    else:
        rows = tuple(evaluate(c) for c in nodes)

    axis_names = tuple(axis.parameter for axis in spec.axes)
    header = axis_names + _metric_header(spec.outputs)
    return SweepResult(header=header, rows=rows, axis_names=axis_names)


@dataclass(frozen=True)
class PresetArtifact:
    """One output table of a preset, with its plotting hint."""

    name: str
    title: str
    result: SweepResult
    svg_kind: str  # "line" or "heatmap"


def _linspace(lo: float, hi: float, n: int) -> tuple[float, ...]:
    return tuple(float(v) for v in np.linspace(lo, hi, n))


def _preset_fig2a(base: CascadeParams, workers: int | None) -> list[PresetArtifact]:
    spec = SweepSpec(
        axes=(SweepAxis("w_g", _linspace(0.049, 5.0, 100)),),
        base=base,
        tau_g=0.0,
        outputs=("fidelity", "concurrence"),
    )
    result = run_sweep(spec, workers)
    return [PresetArtifact("fig2a", "fidelity vs gate width", result, "line")]


def _fidelity_vs_delay(
    base: CascadeParams, fss: float, name: str, workers: int | None
) -> list[PresetArtifact]:
    spec = SweepSpec(
        axes=(SweepAxis("tau_g", _linspace(0.0, 4.0, 201)),),
        base=base.replace(fss=fss),
        w_g=0.5,
        outputs=("fidelity", "concurrence"),
    )
    result = run_sweep(spec, workers)
    title = f"fidelity vs gate delay at fss={fss}"
    return [PresetArtifact(name, title, result, "line")]


def _preset_fig3a(base: CascadeParams, workers: int | None) -> list[PresetArtifact]:
    spec = SweepSpec(
        axes=(
            SweepAxis("temperature", _linspace(4.0, 120.0, 30)),
            SweepAxis("w_g", _linspace(0.05, 1.0, 20)),
        ),
        base=base,
        tau_g=0.0,
        outputs=("concurrence",),
    )
    result = run_sweep(spec, workers)
    return [
        PresetArtifact("fig3a", "concurrence vs temperature and gate width", result, "heatmap")
    ]


def _preset_fig3b(base: CascadeParams, workers: int | None) -> list[PresetArtifact]:
    spec = SweepSpec(
        axes=(
            SweepAxis("temperature", _linspace(4.0, 120.0, 30)),
            SweepAxis("tau_g", _linspace(0.0, 1.5, 31)),
        ),
        base=base,
        w_g=0.1,
        outputs=("concurrence",),
    )
    result = run_sweep(spec, workers)
    return [
        PresetArtifact("fig3b", "concurrence vs temperature and gate delay", result, "heatmap")
    ]


def _preset_fig4(base: CascadeParams, workers: int | None) -> list[PresetArtifact]:
    panels = (
        ("fig4a", 0.1, 0.0),
        ("fig4b", 0.5, 0.0),
        ("fig4c", 0.1, 0.5),
        ("fig4d", 0.5, 0.5),
    )
    artifacts = []
    for name, w_g, tau_g in panels:
        spec = SweepSpec(
            axes=(
                SweepAxis("fss", (0.5, 2.5, 3.5, 5.0)),
                SweepAxis("temperature", _linspace(4.0, 100.0, 25)),
            ),
            base=base,
            tau_g=tau_g,
            w_g=w_g,
            outputs=("concurrence",),
        )
        result = run_sweep(spec, workers)
        title = f"concurrence vs temperature (w_g={w_g}, tau_g={tau_g})"
        artifacts.append(PresetArtifact(name, title, result, "line"))
    return artifacts


def _preset_fig5(base: CascadeParams, workers: int | None) -> list[PresetArtifact]:
    """Sudden-death temperature vs splitting for three background levels.

    The gate is the delayed one the death analysis uses throughout
    (tau_g=0.5 ns, w_g=0.1 ns).  Not every splitting dies within the
    scanned range; those rows carry esd_found=0 and report the scan
    ceiling so the table stays finite.
    """
    g_values = (0.0, 0.45, 1.0)
    s_values = _linspace(0.5, 6.0, 23)
    t_range = (1.0, 150.0)

    def search(node: tuple[float, float]) -> tuple[float, ...]:
        g, s = node
        res = esd_temperature(base.replace(g_noise=g, fss=s), t_range=t_range)
        temp = res.temperature if res.found else t_range[1]
        return (
            g,
            s,
            1.0 if res.found else 0.0,
            float(temp),
            1.0 if res.multi_crossing else 0.0,
        )

    nodes = [(g, s) for g in g_values for s in s_values]
    if workers is None:
        workers = min(8, os.cpu_count() or 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(search, nodes))
    else:
        rows = tuple(search(n) for n in nodes)
    result = SweepResult(
        header=("g_noise", "fss", "esd_found", "esd_temperature", "multi_crossing"),
        rows=rows,
        axis_names=("g_noise", "fss"),
    )
    return [
        PresetArtifact("fig5", "sudden-death temperature vs splitting", result, "line")
    ]


_PRESETS = {
    "fig2a": _preset_fig2a,
    "fig2b": lambda base, workers: _fidelity_vs_delay(base, 2.5, "fig2b", workers),
    "fig2c": lambda base, workers: _fidelity_vs_delay(base, 3.6, "fig2c", workers),
    "fig3a": _preset_fig3a,
    "fig3b": _preset_fig3b,
    "fig4": _preset_fig4,
    "fig5": _preset_fig5,
}

PRESET_NAMES = tuple(_PRESETS)


def run_preset(
    name: str, base: CascadeParams | None = None, workers: int | None = None
) -> list[PresetArtifact]:
    """Run a named preset and return its artifact tables."""
    if name not in _PRESETS:
        raise ParameterError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        )
    if base is None:
        base = CascadeParams()
    return _PRESETS[name](base, workers)
