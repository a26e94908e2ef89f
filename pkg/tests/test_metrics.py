import math

import numpy as np
import pytest

from qdcascade.correlator import GateWindow
from qdcascade.errors import NumericalError, ParameterError, XFormError
from qdcascade.metrics import (
    ESD_DEFAULT_TAU_G,
    ESD_DEFAULT_W_G,
    EntanglementReport,
    concurrence,
    concurrence_x_oracle,
    detected_state,
    esd_temperature,
    fidelity_bell,
    purity,
    spin_flip_roots,
)
from qdcascade.model import CascadeParams

BELL = np.zeros((4, 4), dtype=complex)
BELL[0, 0] = BELL[3, 3] = BELL[0, 3] = BELL[3, 0] = 0.5

BELL_MINUS = BELL.copy()
BELL_MINUS[0, 3] = BELL_MINUS[3, 0] = -0.5

MIXED = np.eye(4, dtype=complex) / 4.0


def werner(p):
    return p * BELL + (1.0 - p) * MIXED


def random_density(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_x_state(rng):
    d = rng.dirichlet(np.ones(4))
    c03 = rng.uniform(0.0, math.sqrt(d[0] * d[3])) * np.exp(2j * np.pi * rng.uniform())
    c12 = rng.uniform(0.0, math.sqrt(d[1] * d[2])) * np.exp(2j * np.pi * rng.uniform())
    rho = np.diag(d).astype(complex)
    rho[0, 3], rho[3, 0] = c03, np.conj(c03)
    rho[1, 2], rho[2, 1] = c12, np.conj(c12)
    return rho


class TestConcurrence:
    def test_bell_state_is_maximally_entangled(self):
        assert concurrence(BELL) == pytest.approx(1.0, abs=1e-12)
        assert concurrence(BELL_MINUS) == pytest.approx(1.0, abs=1e-12)

    def test_flat_background_carries_none(self):
        assert concurrence(MIXED) == 0.0

    def test_separable_diagonal_states_carry_none(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            assert concurrence(np.diag(rng.dirichlet(np.ones(4)))) == 0.0

    def test_werner_closed_form(self):
        # C = max(0, (3p - 1)/2); zero at and below p = 1/3
        assert concurrence(werner(0.5)) == pytest.approx(0.25, abs=1e-9)
        assert concurrence(werner(1.0 / 3.0)) == pytest.approx(0.0, abs=1e-9)
        assert concurrence(werner(0.2)) == 0.0

    def test_partially_entangled_pure_state(self):
        # sqrt(a)|HH> + sqrt(1-a)|VV> has C = 2 sqrt(a (1-a))
        a = 0.25
        psi = np.zeros(4, dtype=complex)
        psi[0], psi[3] = math.sqrt(a), math.sqrt(1.0 - a)
        rho = np.outer(psi, psi.conj())
        assert concurrence(rho) == pytest.approx(2.0 * math.sqrt(a * (1.0 - a)), abs=1e-12)

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(17)
        for _ in range(5):
            rho = random_density(rng)
            c0 = concurrence(rho)
            u = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
            v = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
            w = np.kron(u, v)
            assert concurrence(w @ rho @ w.conj().T) == pytest.approx(c0, abs=1e-10)

    def test_unphysical_input_raises(self):
        bad = np.diag([0.8, 0.4, 0.4, -0.6]).astype(complex)
        with pytest.raises(NumericalError):
            concurrence(bad)
        with pytest.raises(ParameterError):
            concurrence(np.eye(3))


class TestSpinFlipRoots:
    def test_bell_roots(self):
        np.testing.assert_allclose(spin_flip_roots(BELL), [1.0, 0.0, 0.0, 0.0], atol=1e-8)

    def test_descending_and_nonnegative(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            roots = spin_flip_roots(random_density(rng))
            assert np.all(np.diff(roots) <= 1e-15)
            assert np.all(roots >= 0.0)


class TestXOracle:
    def test_rejects_non_x_input(self):
        rho = MIXED.copy()
        rho[0, 1] = 0.1
        with pytest.raises(XFormError):
            concurrence_x_oracle(rho)

    def test_agrees_with_generic_route(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            rho = random_x_state(rng)
            assert concurrence_x_oracle(rho) == pytest.approx(
                concurrence(rho), abs=1e-10
            )

    def test_werner_value(self):
        assert concurrence_x_oracle(werner(0.5)) == pytest.approx(0.25, abs=1e-12)


class TestFidelityAndPurity:
    def test_bell_targets(self):
        assert fidelity_bell(BELL) == pytest.approx(1.0)
        assert fidelity_bell(BELL_MINUS) == pytest.approx(0.0)
        assert fidelity_bell(MIXED) == pytest.approx(0.25)

    def test_fidelity_is_linear(self):
        rng = np.random.default_rng(29)
        a, b = random_density(rng), random_density(rng)
        for lam in (0.0, 0.3, 1.0):
            mix = lam * a + (1.0 - lam) * b
            expected = lam * fidelity_bell(a) + (1.0 - lam) * fidelity_bell(b)
            assert fidelity_bell(mix) == pytest.approx(expected, abs=1e-12)

    def test_purity_extremes(self):
        assert purity(BELL) == pytest.approx(1.0)
        assert purity(MIXED) == pytest.approx(0.25)
        assert purity(werner(0.5)) == pytest.approx(0.4375)  # p^2 + (1-p^2)/4


class TestEntanglementReport:
    def test_concurrence_recomputable_from_lambdas(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            rep = EntanglementReport.from_state(random_density(rng))
            l1, l2, l3, l4 = rep.lambdas
            assert rep.concurrence == pytest.approx(max(0.0, l1 - l2 - l3 - l4), abs=1e-12)
            assert l1 >= l2 >= l3 >= l4 >= 0.0

    def test_fields_match_scalar_functions(self):
        rho = werner(0.7)
        rep = EntanglementReport.from_state(rho)
        assert rep.concurrence == pytest.approx(concurrence(rho), abs=1e-12)
        assert rep.fidelity == pytest.approx(fidelity_bell(rho), abs=1e-12)
        assert rep.purity == pytest.approx(purity(rho), abs=1e-12)


class TestDetectedState:
    def test_is_a_density_matrix(self):
        rho = detected_state(CascadeParams())
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
        assert np.linalg.eigvalsh(rho).min() > -1e-10

    def test_dual_concurrence_routes_agree(self):
        # the cascade output is X-shaped, so the closed form applies
        for p in (CascadeParams(), CascadeParams(fss=4.0, temperature=60.0)):
            rho = detected_state(p, tau_g=0.3, w_g=0.2)
            assert concurrence_x_oracle(rho) == pytest.approx(
                concurrence(rho), abs=1e-10
            )

    def test_explicit_gate_is_validated(self):
        gate = GateWindow(tau_g=0.0, w_g=0.5, t_max=4.0, dt_outer=0.05, dt_inner=0.4)
        with pytest.raises(ParameterError):
            detected_state(CascadeParams(fss=5.0), gate)


class TestEsdSearch:
    def test_default_gate_placement(self):
        assert ESD_DEFAULT_TAU_G == 0.5
        assert ESD_DEFAULT_W_G == 0.1

    def test_zero_splitting_never_dies(self):
        # fss = 0 switches the phonon coupling off entirely, so C is flat
        res = esd_temperature(
            CascadeParams(fss=0.0), t_range=(1.0, 21.0), coarse_step=5.0
        )
        assert not res.found
        assert res.temperature is None and res.bracket is None
        assert not res.multi_crossing
        assert np.all(res.coarse_concurrences > 0.0)
        assert np.ptp(res.coarse_concurrences) < 1e-12

    def test_headline_parameters_have_finite_death(self):
        res = esd_temperature(CascadeParams())
        assert res.found and not res.multi_crossing
        assert res.temperature == pytest.approx(86.06, abs=0.2)
        lo, hi = res.bracket
        assert hi - lo <= res.tolerance
        assert lo <= res.temperature <= hi
        # bracket invariant, recomputed through the full pipeline
        c_lo = concurrence(
            detected_state(
                CascadeParams(temperature=lo),
                tau_g=ESD_DEFAULT_TAU_G,
                w_g=ESD_DEFAULT_W_G,
            )
        )
        c_hi = concurrence(
            detected_state(
                CascadeParams(temperature=hi),
                tau_g=ESD_DEFAULT_TAU_G,
                w_g=ESD_DEFAULT_W_G,
            )
        )
        assert c_lo > 0.0
        assert c_hi == 0.0

    def test_stronger_phonon_coupling_dies_sooner(self):
        weak = esd_temperature(CascadeParams(fss=5.0))
        strong = esd_temperature(CascadeParams(fss=5.0, kappa0=4.0e-5))
        assert weak.found and strong.found
        assert strong.temperature < weak.temperature

    def test_bookkeeping(self):
        res = esd_temperature(
            CascadeParams(fss=0.0), t_range=(1.0, 11.0), coarse_step=5.0
        )
        assert len(res.coarse_temperatures) == len(res.coarse_concurrences) == 3
        assert res.evaluations >= 3
        assert (res.t_min, res.t_max) == (1.0, 11.0)
        assert res.fss == 0.0 and res.g_noise == 0.45

    def test_range_validation(self):
        with pytest.raises(ParameterError):
            esd_temperature(CascadeParams(), t_range=(10.0, 5.0))
        with pytest.raises(ParameterError):
            esd_temperature(CascadeParams(), coarse_step=-1.0)
