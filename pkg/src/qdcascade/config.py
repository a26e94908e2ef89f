"""Configuration files: a small YAML schema with strict key checking.

Sections group the physical inputs (``rates``, ``splitting``,
``phonon``, ``mixing``), the detection gate (``gate``), and an optional
``sweep`` block.  Every default equals the headline parameter set, so an
empty file is a valid configuration.  Unknown sections or keys are
rejected rather than ignored; a typo should fail loudly, not silently
fall back to a default.

Example::

    rates:   {gamma32: 1.8, gamma31: 1.8, gamma20: 1.3, gamma10: 1.3}
    splitting: {fss: 2.5}
    phonon:  {temperature: 10.0, kappa0: 2.0e-5}
    mixing:  {eta: 0.91, g_noise: 0.45}
    gate:    {tau_g: 0.0, w_g: 0.049}
    sweep:
      axes:
        - {parameter: w_g, start: 0.049, stop: 5.0, count: 100}
      outputs: [fidelity, concurrence]

An axis takes either an explicit ``values`` list or an evenly spaced
``start``/``stop``/``count`` range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import yaml

from .errors import ParameterError
from .experiments import SweepAxis, SweepSpec
from .model import CascadeParams

__all__ = ["Config", "axis_from_mapping", "config_from_mapping", "load_config"]

_SECTIONS = {
    "rates": ("gamma32", "gamma31", "gamma20", "gamma10"),
    "splitting": ("fss", "biexciton_energy"),
    "phonon": ("temperature", "kappa0"),
    "mixing": ("eta", "g_noise"),
    "gate": ("tau_g", "w_g", "t_max", "dt_outer", "dt_inner"),
    "sweep": ("axes", "outputs"),
}

_AXIS_KEYS = ("parameter", "values", "start", "stop", "count")


@dataclass(frozen=True)
class Config:
    """Parsed configuration: the base parameter point, the gate
    placement, optional explicit grid steps, and an optional sweep."""

    params: CascadeParams
    tau_g: float = 0.0
    w_g: float = 0.049
    t_max: float | None = None
    dt_outer: float | None = None
    dt_inner: float | None = None
    sweep: SweepSpec | None = None


def _require_mapping(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise ParameterError(f"{where} must be a mapping, got {type(value).__name__}")
    return value


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"{where} must be a number, got {value!r}")
    return float(value)


def _check_keys(section: str, data: dict) -> None:
    allowed = _SECTIONS[section]
    for key in data:
        if key not in allowed:
            raise ParameterError(
                f"unknown key {key!r} in section {section!r}; "
                f"valid: {', '.join(allowed)}"
            )


def axis_from_mapping(entry, index: int = 0) -> SweepAxis:
    """Parse one axis mapping (explicit values or start/stop/count)."""
    data = _require_mapping(entry, f"sweep axis #{index}")
    for key in data:
        if key not in _AXIS_KEYS:
            raise ParameterError(
                f"unknown key {key!r} in sweep axis #{index}; "
                f"valid: {', '.join(_AXIS_KEYS)}"
            )
    if "parameter" not in data:
        raise ParameterError(f"sweep axis #{index} is missing 'parameter'")
    name = data["parameter"]
    has_values = "values" in data
    has_range = any(k in data for k in ("start", "stop", "count"))
    if has_values == has_range:
        raise ParameterError(
            f"sweep axis #{index} needs either 'values' or 'start'/'stop'/'count'"
        )
    if has_values:
        raw = data["values"]
        if not isinstance(raw, (list, tuple)):
            raise ParameterError(f"sweep axis #{index} 'values' must be a list")
        values = tuple(_number(v, f"axis #{index} value") for v in raw)
    else:
        for k in ("start", "stop", "count"):
            if k not in data:
                raise ParameterError(f"sweep axis #{index} is missing {k!r}")
        count = data["count"]
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise ParameterError(
                f"sweep axis #{index} 'count' must be a positive integer"
            )
        start = _number(data["start"], f"axis #{index} start")
        stop = _number(data["stop"], f"axis #{index} stop")
        values = tuple(float(v) for v in np.linspace(start, stop, count))
    return SweepAxis(parameter=name, values=values)


def config_from_mapping(data: dict | None) -> Config:
    """Build a configuration from a parsed YAML document (a mapping of
    sections).  ``None`` (an empty file) yields all defaults."""
    if data is None:
        data = {}
    data = _require_mapping(data, "configuration")
    for section in data:
        if section not in _SECTIONS:
            raise ParameterError(
                f"unknown section {section!r}; valid: {', '.join(_SECTIONS)}"
            )

    fields: dict[str, float] = {}
    for section in ("rates", "splitting", "phonon", "mixing"):
        block = _require_mapping(data.get(section, {}), f"section {section!r}")
        _check_keys(section, block)
        for key, value in block.items():
            fields[key] = _number(value, f"{section}.{key}")
    params = CascadeParams().replace(**fields)

    gate = _require_mapping(data.get("gate", {}), "section 'gate'")
    _check_keys("gate", gate)
    tau_g = _number(gate.get("tau_g", 0.0), "gate.tau_g")
    w_g = _number(gate.get("w_g", 0.049), "gate.w_g")
    optional = {
        key: (_number(gate[key], f"gate.{key}") if key in gate else None)
        for key in ("t_max", "dt_outer", "dt_inner")
    }

    sweep = None
    if "sweep" in data:
        block = _require_mapping(data["sweep"], "section 'sweep'")
        _check_keys("sweep", block)
        if "axes" not in block:
            raise ParameterError("sweep section is missing 'axes'")
        raw_axes = block["axes"]
        if not isinstance(raw_axes, (list, tuple)) or not raw_axes:
            raise ParameterError("sweep.axes must be a non-empty list")
        axes = tuple(axis_from_mapping(a, i) for i, a in enumerate(raw_axes))
        outputs = block.get("outputs", ["concurrence", "fidelity"])
        if not isinstance(outputs, (list, tuple)):
            raise ParameterError("sweep.outputs must be a list of metric names")
        for name in outputs:
            if not isinstance(name, str):
                raise ParameterError(f"sweep output {name!r} must be a string")
        sweep = SweepSpec(
            axes=axes,
            base=params,
            tau_g=tau_g,
            w_g=w_g,
            outputs=tuple(outputs),
            t_max=optional["t_max"],
            dt_outer=optional["dt_outer"],
            dt_inner=optional["dt_inner"],
        )

    return Config(
        params=params,
        tau_g=tau_g,
        w_g=w_g,
        t_max=optional["t_max"],
        dt_outer=optional["dt_outer"],
        dt_inner=optional["dt_inner"],
        sweep=sweep,
    )


def load_config(path: str) -> Config:
    """Read and validate a YAML configuration file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParameterError(f"cannot parse {path}: {exc}") from exc
    return config_from_mapping(data)
