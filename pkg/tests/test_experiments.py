import numpy as np
import pytest

from qdcascade.correlator import GateWindow
from qdcascade.errors import ParameterError
from qdcascade.experiments import (
    AXIS_PARAMETERS,
    METRIC_NAMES,
    PRESET_NAMES,
    SweepAxis,
    SweepSpec,
    run_point,
    run_preset,
    run_sweep,
)
from qdcascade.model import CascadeParams


class TestRunPoint:
    def test_ideal_cascade_yields_bell_state(self):
        # no splitting, no phonons, no spectral or background dilution,
        # equal exciton lifetimes: the gated pair is exactly maximally
        # entangled
        p = CascadeParams(fss=0.0, temperature=0.0, kappa0=0.0, eta=1.0, g_noise=0.0)
        point = run_point(p)
        assert point.report.concurrence == pytest.approx(1.0, abs=1e-10)
        assert point.report.fidelity == pytest.approx(1.0, abs=1e-10)
        assert point.report.purity == pytest.approx(1.0, abs=1e-10)

    def test_headline_point_is_partially_entangled(self):
        point = run_point(CascadeParams())
        assert 0.0 < point.report.concurrence < 1.0
        assert 0.5 < point.report.fidelity < 1.0
        assert np.trace(point.rho_total).real == pytest.approx(1.0, abs=1e-12)
        assert np.trace(point.rho_raw).real == pytest.approx(1.0, abs=1e-12)

    def test_error_carries_parameter_note(self):
        gate = GateWindow(tau_g=0.0, w_g=0.5, t_max=4.0, dt_outer=0.05, dt_inner=0.4)
        with pytest.raises(ParameterError, match="fss=5.0"):
            run_point(CascadeParams(fss=5.0), gate)


class TestSweepSpecValidation:
    def test_axis_values_coerced_to_floats(self):
        axis = SweepAxis("temperature", (4, 10, 77))
        assert axis.values == (4.0, 10.0, 77.0)
        assert all(isinstance(v, float) for v in axis.values)

    def test_axis_rejects_unknown_parameter(self):
        with pytest.raises(ParameterError, match="unknown sweep parameter"):
            SweepAxis("detuning", (1.0,))

    def test_axis_rejects_empty_or_nonfinite(self):
        with pytest.raises(ParameterError):
            SweepAxis("fss", ())
        with pytest.raises(ParameterError):
            SweepAxis("fss", (1.0, float("nan")))

    def test_spec_rejects_duplicate_axes(self):
        with pytest.raises(ParameterError, match="duplicate"):
            SweepSpec(axes=(SweepAxis("fss", (1.0,)), SweepAxis("fss", (2.0,))))

    def test_spec_rejects_unknown_output(self):
        with pytest.raises(ParameterError, match="unknown metric"):
            SweepSpec(axes=(SweepAxis("fss", (1.0,)),), outputs=("entropy",))

    def test_spec_rejects_three_axes(self):
        axes = tuple(SweepAxis(n, (1.0,)) for n in ("fss", "temperature", "eta"))
        with pytest.raises(ParameterError):
            SweepSpec(axes=axes)

    def test_axis_catalogue_covers_gate_placement(self):
        assert "tau_g" in AXIS_PARAMETERS and "w_g" in AXIS_PARAMETERS
        assert "diag" in METRIC_NAMES


class TestRunSweep:
    def test_row_major_node_order(self):
        spec = SweepSpec(
            axes=(
                SweepAxis("fss", (1.0, 2.0)),
                SweepAxis("temperature", (10.0, 20.0, 30.0)),
            ),
            outputs=("concurrence",),
        )
        result = run_sweep(spec, workers=1)
        assert result.header == ("fss", "temperature", "concurrence")
        assert result.axis_names == ("fss", "temperature")
        coords = [row[:2] for row in result.rows]
        assert coords == [
            (1.0, 10.0),
            (1.0, 20.0),
            (1.0, 30.0),
            (2.0, 10.0),
            (2.0, 20.0),
            (2.0, 30.0),
        ]

    def test_diag_output_expands_to_four_columns(self):
        spec = SweepSpec(
            axes=(SweepAxis("temperature", (10.0, 50.0)),),
            outputs=("diag", "rho14_abs"),
        )
        result = run_sweep(spec, workers=1)
        assert result.header == (
            "temperature",
            "diag_hh",
            "diag_hv",
            "diag_vh",
            "diag_vv",
            "rho14_abs",
        )
        for row in result.rows:
            assert sum(row[1:5]) == pytest.approx(1.0, abs=1e-10)
            assert 0.0 < row[5] <= 0.5

    def test_worker_count_does_not_change_rows(self):
        spec = SweepSpec(
            axes=(SweepAxis("w_g", (0.049, 0.2, 0.5, 1.0)),),
            outputs=("concurrence", "fidelity"),
        )
        serial = run_sweep(spec, workers=1)
        threaded = run_sweep(spec, workers=4)
        assert serial.rows == threaded.rows
        assert serial.header == threaded.header

    def test_failing_node_reports_coordinates(self):
        spec = SweepSpec(
            axes=(SweepAxis("eta", (0.5, 2.0)),), outputs=("concurrence",)
        )
        with pytest.raises(ParameterError, match=r"sweep node \(eta=2\.0\)"):
            run_sweep(spec, workers=1)

    def test_column_accessor(self):
        spec = SweepSpec(axes=(SweepAxis("fss", (1.0, 3.0)),), outputs=("fidelity",))
        result = run_sweep(spec, workers=1)
        np.testing.assert_array_equal(result.column("fss"), [1.0, 3.0])
        assert result.column("fidelity").shape == (2,)
        with pytest.raises(ParameterError):
            result.column("nope")

    def test_gate_placement_axis(self):
        # sweeping tau_g must change the state: coherence phase rotates
        spec = SweepSpec(
            axes=(SweepAxis("tau_g", (0.0, 0.4, 0.8)),), outputs=("rho14_arg",)
        )
        args = run_sweep(spec, workers=1).column("rho14_arg")
        assert len(set(np.round(args, 6))) == 3


class TestPresets:
    def test_catalogue(self):
        assert PRESET_NAMES == (
            "fig2a",
            "fig2b",
            "fig2c",
            "fig3a",
            "fig3b",
            "fig4",
            "fig5",
        )

    def test_unknown_preset_rejected(self):
        with pytest.raises(ParameterError, match="unknown preset"):
            run_preset("fig9")

    def test_gate_width_preset_structure(self):
        artifacts = run_preset("fig2a")
        assert len(artifacts) == 1
        art = artifacts[0]
        assert art.name == "fig2a"
        assert art.svg_kind == "line"
        assert art.result.header == ("w_g", "fidelity", "concurrence")
        assert len(art.result.rows) == 100
        fid = art.result.column("fidelity")
        assert np.all((fid >= 0.0) & (fid <= 1.0))
        # narrow gates preserve the most entanglement
        assert fid[0] > fid[-1]

    def test_multi_panel_preset_names(self):
        artifacts = run_preset("fig4")
        assert [a.name for a in artifacts] == ["fig4a", "fig4b", "fig4c", "fig4d"]
        for art in artifacts:
            assert len(art.result.rows) == 4 * 25
