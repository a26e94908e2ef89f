"""Command-line interface.

The CLI is a thin client of the HTTP service: every computation goes
through the service API, by default against an in-process instance (no
network, no separate process), or against a remote server when
``--server``/``QDCASCADE_SERVER`` is set.  File artifacts (CSV, JSON,
SVG) are written locally from the service responses.

Exit codes: 0 success, 1 parameter or parse error, 2 numerical-validity
error, 3 I/O error (including failure to reach a remote server).
"""

from __future__ import annotations

import asyncio
import json
import os
import sys
from dataclasses import asdict

import click
import httpx

from . import __version__
from .config import Config, load_config
from .correlator import BASIS_LABELS
from .emitters import emit_csv, emit_json, emit_svg, fmt_float
from .errors import CascadeError, NumericalError, ParameterError
from .experiments import PRESET_NAMES
from .model import CascadeParams

_PARAM_FLAGS = (
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
)
_GATE_FLAGS = ("tau_g", "w_g", "t_max", "dt_outer", "dt_inner")


def _param_options(command):
    for name in reversed(_PARAM_FLAGS):
        flag = "--" + name.replace("_", "-")
        command = click.option(flag, type=float, default=None, help=f"override {name}")(command)
    return command


def _gate_options(command):
    for name in reversed(_GATE_FLAGS):
        flag = "--" + name.replace("_", "-")
        command = click.option(flag, type=float, default=None, help=f"override {name}")(command)
    return command


def _load(config_path: str | None) -> Config:
    if config_path is None:
        return Config(params=CascadeParams())
    return load_config(config_path)


def _payloads(cfg: Config, kwargs: dict) -> tuple[dict, dict]:
    """Parameter and gate payloads: config values with flag overrides."""
    params = asdict(cfg.params)
    for name in _PARAM_FLAGS:
        if kwargs.get(name) is not None:
            params[name] = kwargs[name]
    gate = {
        "tau_g": cfg.tau_g,
        "w_g": cfg.w_g,
        "t_max": cfg.t_max,
        "dt_outer": cfg.dt_outer,
        "dt_inner": cfg.dt_inner,
    }
    for name in _GATE_FLAGS:
        if kwargs.get(name) is not None:
            gate[name] = kwargs[name]
    return params, gate


async def _request(server: str | None, method: str, path: str, payload: dict | None) -> dict:
    if server:
        client = httpx.AsyncClient(base_url=server, timeout=600.0)
    else:
        from .service import create_app

        client = httpx.AsyncClient(
            transport=httpx.ASGITransport(app=create_app()),
            base_url="http://qdcascade.internal",
            timeout=600.0,
        )
    try:
        async with client:
            if method == "GET":
                resp = await client.get(path)
            else:
                resp = await client.post(path, json=payload)
    except httpx.HTTPError as exc:
        raise OSError(f"cannot reach service at {server}: {exc}") from exc
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        raise NumericalError(f"service returned HTTP {resp.status_code}")
    if isinstance(body, dict) and body.get("error_type") == "numerical":
        raise NumericalError(body.get("message", "numerical error"))
    if isinstance(body, dict) and "detail" in body:
        # FastAPI request-validation failure: malformed input
        raise ParameterError(f"invalid request: {body['detail']}")
    raise ParameterError(
        body.get("message", f"service returned HTTP {resp.status_code}")
        if isinstance(body, dict)
        else f"service returned HTTP {resp.status_code}"
    )


def _call(server: str | None, method: str, path: str, payload: dict | None = None) -> dict:
    return asyncio.run(_request(server, method, path, payload))


def _matrix_lines(matrix: dict) -> list[str]:
    lines = ["          " + "".join(f"{label:>22}" for label in BASIS_LABELS)]
    for i, label in enumerate(BASIS_LABELS):
        cells = []
        for j in range(4):
            re, im = matrix["re"][i][j], matrix["im"][i][j]
            cells.append(f"{re:+.6f}{im:+.6f}j")
        lines.append(f"{label:>6}    " + "  ".join(cells))
    return lines


def _write_table(table: dict, stem: str, outdir: str, formats: tuple[str, ...], svg_kind: str | None, title: str = "") -> list[str]:
    from .experiments import SweepResult

    result = SweepResult(
        header=tuple(table["header"]),
        rows=tuple(tuple(row) for row in table["rows"]),
        axis_names=tuple(table["axis_names"]),
    )
    os.makedirs(outdir, exist_ok=True)
    written = []
    if "csv" in formats:
        path = os.path.join(outdir, stem + ".csv")
        emit_csv(result, path)
        written.append(path)
    if "json" in formats:
        path = os.path.join(outdir, stem + ".json")
        emit_json(result, path)
        written.append(path)
    if "svg" in formats:
        kind = svg_kind or ("heatmap" if len(result.axis_names) == 2 else "line")
        path = os.path.join(outdir, stem + ".svg")
        emit_svg(result, path, kind, title=title)
        written.append(path)
    return written


@click.group()
@click.version_option(version=__version__, prog_name="qdcascade")
@click.option(
    "--server",
    envvar="QDCASCADE_SERVER",
    default=None,
    help="base URL of a running service; default is an in-process instance",
)
@click.option(
    "--outdir",
    envvar="QDCASCADE_OUTDIR",
    default=".",
    show_default=True,
    help="directory for generated files",
)
@click.pass_context
def cli(ctx: click.Context, server: str | None, outdir: str) -> None:
    """Biexciton-cascade photon-pair entanglement simulator."""
    ctx.obj = {"server": server, "outdir": outdir}


@cli.command()
@click.option("--config", "config_path", type=str, default=None, help="YAML configuration file")
@click.option("--json", "as_json", is_flag=True, help="print the raw JSON response")
@_param_options
@_gate_options
@click.pass_context
def simulate(ctx: click.Context, config_path: str | None, as_json: bool, **kwargs) -> None:
    """Run one parameter point and print the report and matrices."""
    params, gate = _payloads(_load(config_path), kwargs)
    body = _call(ctx.obj["server"], "POST", "/simulate", {"params": params, "gate": gate})
    if as_json:
        click.echo(json.dumps(body, indent=2))
        return
    rep = body["report"]
    used = body["gate"]
    click.echo(f"gate: tau_g={fmt_float(used['tau_g'])} ns  w_g={fmt_float(used['w_g'])} ns")
    click.echo(f"concurrence: {fmt_float(rep['concurrence'])}")
    click.echo(f"fidelity:    {fmt_float(rep['fidelity'])}")
    click.echo(f"purity:      {fmt_float(rep['purity'])}")
    click.echo("lambdas:     " + "  ".join(fmt_float(v) for v in rep["lambdas"]))
    click.echo("detected state:")
    for line in _matrix_lines(body["rho_total"]):
        click.echo("  " + line)
    click.echo("gated cascade state (before mixing):")
    for line in _matrix_lines(body["rho_raw"]):
        click.echo("  " + line)


@cli.command()
@click.option("--config", "config_path", type=str, required=True, help="YAML file with a sweep section")
@click.option("--out", "stem", default=None, help="output file stem (default: config name)")
@click.option(
    "--formats",
    default="csv,json,svg",
    show_default=True,
    help="comma-separated subset of csv,json,svg",
)
@click.option("--svg-kind", type=click.Choice(["line", "heatmap"]), default=None)
@click.option("--workers", type=int, default=None, help="thread pool size")
@_param_options
@_gate_options
@click.pass_context
def sweep(
    ctx: click.Context,
    config_path: str,
    stem: str | None,
    formats: str,
    svg_kind: str | None,
    workers: int | None,
    **kwargs,
) -> None:
    """Run the sweep described by a configuration file."""
    cfg = _load(config_path)
    if cfg.sweep is None:
        raise ParameterError(f"{config_path} has no sweep section")
    wanted = tuple(f.strip() for f in formats.split(",") if f.strip())
    for f in wanted:
        if f not in ("csv", "json", "svg"):
            raise ParameterError(f"unknown format {f!r}; valid: csv, json, svg")
    params, gate = _payloads(cfg, kwargs)
    payload = {
        "params": params,
        "gate": gate,
        "axes": [
            {"parameter": a.parameter, "values": list(a.values)} for a in cfg.sweep.axes
        ],
        "outputs": list(cfg.sweep.outputs),
        "workers": workers,
    }
    table = _call(ctx.obj["server"], "POST", "/sweep", payload)
    if stem is None:
        stem = os.path.splitext(os.path.basename(config_path))[0]
    for path in _write_table(table, stem, ctx.obj["outdir"], wanted, svg_kind):
        click.echo(path)


@cli.command()
@click.option("--config", "config_path", type=str, default=None, help="YAML configuration file")
@click.option("--tau-g", type=float, default=0.5, show_default=True)
@click.option("--w-g", type=float, default=0.1, show_default=True)
@click.option("--t-min", type=float, default=1.0, show_default=True)
@click.option("--t-max", type=float, default=150.0, show_default=True)
@click.option("--step", type=float, default=2.0, show_default=True, help="coarse scan step (K)")
@click.option("--tol", type=float, default=0.01, show_default=True, help="bisection tolerance (K)")
@click.option("--json", "as_json", is_flag=True, help="print the raw JSON response")
@_param_options
@click.pass_context
def esd(
    ctx: click.Context,
    config_path: str | None,
    tau_g: float,
    w_g: float,
    t_min: float,
    t_max: float,
    step: float,
    tol: float,
    as_json: bool,
    **kwargs,
) -> None:
    """Search for the sudden-death temperature of the concurrence."""
    params, _ = _payloads(_load(config_path), kwargs)
    payload = {
        "params": params,
        "tau_g": tau_g,
        "w_g": w_g,
        "t_min": t_min,
        "t_max": t_max,
        "coarse_step": step,
        "tol": tol,
    }
    body = _call(ctx.obj["server"], "POST", "/esd", payload)
    if as_json:
        click.echo(json.dumps(body, indent=2))
        return
    if body["found"]:
        lo, hi = body["bracket"]
        click.echo(
            f"sudden death at T = {fmt_float(body['temperature'])} K "
            f"(bracket [{fmt_float(lo)}, {fmt_float(hi)}], tol {fmt_float(body['tolerance'])} K)"
        )
    else:
        click.echo(
            f"no sudden death in [{fmt_float(body['t_min'])}, {fmt_float(body['t_max'])}] K"
        )
    if body["multi_crossing"]:
        click.echo("warning: concurrence was not monotone over the coarse scan")


@cli.command()
@click.argument("preset")
@click.option("--formats", default="csv,json,svg", show_default=True)
@click.pass_context
def fig(ctx: click.Context, preset: str, formats: str) -> None:
    """Reproduce a named figure preset (or 'all')."""
    wanted = tuple(f.strip() for f in formats.split(",") if f.strip())
    names = PRESET_NAMES if preset == "all" else (preset,)
    for name in names:
        body = _call(ctx.obj["server"], "POST", f"/figures/{name}")
        for artifact in body["artifacts"]:
            paths = _write_table(
                artifact["table"],
                artifact["name"],
                ctx.obj["outdir"],
                wanted,
                artifact["svg_kind"],
                title=artifact["title"],
            )
            for path in paths:
                click.echo(path)


@cli.command()
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=20240811, show_default=True)
@click.pass_context
def validate(ctx: click.Context, samples: int, seed: int) -> None:
    """Run the randomized invariant suite; nonzero exit on any failure."""
    body = _call(
        ctx.obj["server"], "POST", "/validate", {"samples": samples, "seed": seed}
    )
    for check in body["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        line = (
            f"{status}  {check['name']:<28} worst={check['worst']:.3e} "
            f"tol={check['tolerance']:.1e}"
        )
        if not check["passed"] and check["detail"]:
            line += f"  ({check['detail']})"
        click.echo(line)
    if not body["passed"]:
        raise NumericalError("validation suite failed")
    click.echo(f"all {len(body['checks'])} checks passed ({samples} samples)")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Exit as exc:
        # raised by --help/--version under standalone_mode=False
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except ParameterError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except NumericalError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except CascadeError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())
