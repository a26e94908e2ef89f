"""Randomized invariant suite over the full pipeline.

Each sample draws a physically valid parameter set and gate, runs the
cascade end to end, and checks the properties that must hold regardless
of parameter values: trace preservation and Hermiticity of propagated
states, positivity and X-shape of the assembled matrices, detailed
balance of the phonon rates, agreement between the generic and
closed-form concurrence routes, agreement between the Simpson assembly
and the analytic coherence, and invariance of concurrence under local
unitaries.

The draw is seeded, so a failure reproduces exactly; each check reports
its worst deviation over all samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlator import GateWindow, analytic_raw_matrix, assemble_raw_matrix
from .errors import CascadeError
from .linalg import devectorize, expm, vectorize
from .metrics import concurrence, concurrence_x_oracle
from .model import KB, CascadeParams, build_liouvillian, initial_biexciton_state, phonon_rates
from .tomography import mix_total

__all__ = ["CheckResult", "run_validation", "DEFAULT_SAMPLES", "DEFAULT_SEED"]

DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 20240811

_X_MASK = np.zeros((4, 4), dtype=bool)
_X_MASK[np.arange(4), np.arange(4)] = True
_X_MASK[0, 3] = _X_MASK[3, 0] = _X_MASK[1, 2] = _X_MASK[2, 1] = True


@dataclass(frozen=True)
class CheckResult:
    """Aggregated outcome of one invariant over every sample."""

    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str


class _Tracker:
    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.worst = 0.0
        self.detail = ""

    def update(self, deviation: float, context: str) -> None:
        deviation = float(deviation)
        if deviation > self.worst:
            self.worst = deviation
            if deviation > self.tolerance:
                self.detail = context

    def result(self) -> CheckResult:
        return CheckResult(
            name=self.name,
            passed=bool(self.worst <= self.tolerance),
            worst=self.worst,
            tolerance=self.tolerance,
            detail=self.detail,
        )


def _random_params(rng: np.random.Generator) -> CascadeParams:
    return CascadeParams(
        gamma32=rng.uniform(0.5, 3.0),
        gamma31=rng.uniform(0.5, 3.0),
        gamma20=rng.uniform(0.5, 3.0),
        gamma10=rng.uniform(0.5, 3.0),
        fss=rng.uniform(0.2, 6.0),
        temperature=rng.uniform(4.0, 100.0),
        kappa0=float(10.0 ** rng.uniform(-6.0, -3.0)),
        eta=rng.uniform(0.0, 1.0),
        g_noise=rng.uniform(0.0, 1.0),
    )


def _random_unitary(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def run_validation(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run every invariant over ``samples`` random parameter sets."""
    rng = np.random.default_rng(seed)
    checks = {
        "trace_preservation": _Tracker("trace_preservation", 1.0e-9),
        "hermiticity": _Tracker("hermiticity", 1.0e-10),
        "positivity": _Tracker("positivity", 1.0e-9),
        "x_form": _Tracker("x_form", 1.0e-8),
        "detailed_balance": _Tracker("detailed_balance", 1.0e-12),
        "coherence_oracle": _Tracker("coherence_oracle", 1.0e-6),
        "concurrence_lu_invariance": _Tracker("concurrence_lu_invariance", 1.0e-9),
        "concurrence_x_oracle": _Tracker("concurrence_x_oracle", 1.0e-8),
    }
    failures: list[str] = []

    for i in range(samples):
        p = _random_params(rng)
        tau_g = rng.uniform(0.0, 1.0)
        w_g = rng.uniform(0.02, 2.0)
        ctx = f"sample {i}: fss={p.fss:.4g}, T={p.temperature:.4g}, tau_g={tau_g:.4g}, w_g={w_g:.4g}"
        try:
            gate = GateWindow.auto(p, tau_g, w_g)
            lio = build_liouvillian(p)

            t = rng.uniform(0.0, 2.0 / p.biexciton_rate)
            rho_t = devectorize(expm(lio * t) @ vectorize(initial_biexciton_state()))
            checks["trace_preservation"].update(abs(np.trace(rho_t).real - 1.0), ctx)
            checks["hermiticity"].update(np.abs(rho_t - rho_t.conj().T).max(), ctx)

            pr = phonon_rates(p)
            if pr.gamma21 > 0:
                expected = math.exp(-p.fss / (KB * p.temperature))
                ratio = pr.gamma12 / pr.gamma21
                checks["detailed_balance"].update(
                    abs(ratio - expected) / expected, ctx
                )

            raw = assemble_raw_matrix(lio, None, gate)
            checks["x_form"].update(np.abs(raw.entries[~_X_MASK]).max(), ctx)
            ana = analytic_raw_matrix(p, tau_g, w_g)
            num = raw.entries[0, 3]
            scale = max(abs(ana[0, 3]), 1.0e-3)
            checks["coherence_oracle"].update(abs(num - ana[0, 3]) / scale, ctx)

            rho_tot = mix_total(raw.entries, p.eta, p.g_noise)
            checks["hermiticity"].update(np.abs(rho_tot - rho_tot.conj().T).max(), ctx)
            checks["trace_preservation"].update(abs(np.trace(rho_tot).real - 1.0), ctx)
            eigs = np.linalg.eigvalsh(0.5 * (rho_tot + rho_tot.conj().T))
            checks["positivity"].update(max(0.0, -float(eigs.min())), ctx)

            c = concurrence(rho_tot)
            cx = concurrence_x_oracle(rho_tot, tol=1.0e-8)
            checks["concurrence_x_oracle"].update(abs(c - cx), ctx)

            u = np.kron(_random_unitary(rng), _random_unitary(rng))
            rotated = u @ rho_tot @ u.conj().T
            checks["concurrence_lu_invariance"].update(abs(concurrence(rotated) - c), ctx)
        except CascadeError as exc:
            failures.append(f"{ctx}: {exc}")

    results = [tracker.result() for tracker in checks.values()]
    if failures:
        results.append(
            CheckResult(
                name="pipeline_errors",
                passed=False,
                worst=float(len(failures)),
                tolerance=0.0,
                detail=failures[0],
            )
        )
    return results
