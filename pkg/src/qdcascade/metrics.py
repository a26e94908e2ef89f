"""Entanglement measures and the sudden-death temperature search.

Concurrence follows the spin-flip construction: the eigenvalues of
rho (sy x sy) rho* (sy x sy) are real and nonnegative for a physical
state, and C = max(0, l1 - l2 - l3 - l4) on their square roots in
decreasing order.  For X-shaped states an independent closed form exists
and is kept as a cross-check.  Bell fidelity is the overlap with the
(|HH> + |VV>)/sqrt(2) target.

The sudden-death search locates the temperature where the detected
state's concurrence first reaches exactly zero.  Because concurrence is
identically zero past the transition (not merely small), the search is a
coarse scan for the first positive-to-zero step followed by bisection on
the indicator C > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correlator import GateWindow, assemble_raw_matrix
from .errors import NumericalError, ParameterError, XFormError
from .linalg import eigenvalues_general
from .model import CascadeParams, build_liouvillian
from .tomography import mix_total

__all__ = [
    "spin_flip_roots",
    "concurrence",
    "concurrence_x_oracle",
    "fidelity_bell",
    "purity",
    "EntanglementReport",
    "detected_state",
    "EsdResult",
    "esd_temperature",
]

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP = np.kron(_SY, _SY)

#: Gate placement used by the sudden-death search unless overridden.
#: A delayed gate lets spin scattering act before detection, which is
#: what makes the death temperature finite.
ESD_DEFAULT_TAU_G = 0.5
ESD_DEFAULT_W_G = 0.1


def _check_state(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ParameterError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    return rho


def spin_flip_roots(rho: np.ndarray) -> np.ndarray:
    """Square roots of the spin-flipped product's eigenvalues, descending.

    The spectrum must be real and nonnegative up to roundoff; eigenvalues
    with imaginary part beyond 1e-8 or real part below -1e-10 indicate an
    unphysical input and raise :class:`NumericalError`.  Smaller negative
    dust is clipped to zero.
    """
    rho = _check_state(rho)
    product = rho @ _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    vals = eigenvalues_general(product)
    for v in vals:
        if abs(v.imag) > 1.0e-8 or v.real < -1.0e-10:
            raise NumericalError(
                f"spin-flip spectrum is unphysical (eigenvalue {v}); "
                "input is not a valid density matrix"
            )
    roots = np.sqrt(np.clip(vals.real, 0.0, None))
    return np.sort(roots)[::-1]


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    roots = spin_flip_roots(rho)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def concurrence_x_oracle(rho: np.ndarray, tol: float = 1.0e-9) -> float:
    """Closed-form concurrence for X-shaped states.

    Valid only when every element outside the diagonal and the two
    anti-diagonal coherences vanishes; anything larger than ``tol``
    raises :class:`XFormError`.  Independent of the generic eigenvalue
    route, so the two must agree on cascade states.
    """
    rho = _check_state(rho)
    mask = np.zeros((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = True
    mask[0, 3] = mask[3, 0] = mask[1, 2] = mask[2, 1] = True
    stray = np.abs(rho[~mask]).max()
    if stray > tol:
        raise XFormError(
            f"matrix is not X-shaped (stray element magnitude {stray:g} > {tol:g})"
        )
    d = rho.diagonal().real
    inner = abs(rho[1, 2]) - math.sqrt(max(d[0] * d[3], 0.0))
    outer = abs(rho[0, 3]) - math.sqrt(max(d[1] * d[2], 0.0))
    return float(max(0.0, 2.0 * inner, 2.0 * outer))


def fidelity_bell(rho: np.ndarray) -> float:
    """Overlap with the phase-zero Bell state (|HH> + |VV>)/sqrt(2)."""
    rho = _check_state(rho)
    return float(0.5 * (rho[0, 0].real + rho[3, 3].real) + rho[0, 3].real)


def purity(rho: np.ndarray) -> float:
    """Tr[rho^2]; 1 for pure states, 1/4 for the flat background."""
    rho = _check_state(rho)
    return float(np.trace(rho @ rho).real)


@dataclass(frozen=True)
class EntanglementReport:
    """Scalar summary of a two-photon state.

    ``lambdas`` stores the descending spin-flip roots so the concurrence
    can be recomputed from the report alone.
    """

    concurrence: float
    fidelity: float
    purity: float
    lambdas: tuple[float, float, float, float]

    @classmethod
    def from_state(cls, rho: np.ndarray) -> "EntanglementReport":
        roots = spin_flip_roots(rho)
        return cls(
            concurrence=float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3])),
            fidelity=fidelity_bell(rho),
            purity=purity(rho),
            lambdas=tuple(float(r) for r in roots),
        )


def detected_state(
    params: CascadeParams,
    gate: GateWindow | None = None,
    *,
    tau_g: float = 0.0,
    w_g: float = 0.049,
) -> np.ndarray:
    """Full pipeline for one parameter point: propagate the cascade,
    gate-integrate the correlators, and apply the overlap/background
    mixture.  ``tau_g``/``w_g`` are used only when no gate is given."""
    if gate is None:
        gate = GateWindow.auto(params, tau_g, w_g)
    else:
        gate.validate_against(params)
    lio = build_liouvillian(params)
    raw = assemble_raw_matrix(lio, None, gate)
    return mix_total(raw.entries, params.eta, params.g_noise)


@dataclass(frozen=True)
class EsdResult:
    """Outcome of the sudden-death temperature search.

    ``temperature`` is the bracket midpoint, or None when no death lies
    in the range (concurrence positive throughout, or zero throughout).
    ``bracket`` satisfies C(lo) > 0 and C(hi) = 0 when a death is found.
    ``multi_crossing`` flags any non-monotone behaviour on the coarse
    grid: revivals, an initially dead state that comes alive, or any
    increase of C with temperature.
    """

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
    coarse_temperatures: np.ndarray = field(repr=False)
    coarse_concurrences: np.ndarray = field(repr=False)


def esd_temperature(
    params: CascadeParams,
    gate: GateWindow | None = None,
    *,
    t_range: tuple[float, float] = (1.0, 150.0),
    coarse_step: float = 2.0,
    tol: float = 0.01,
) -> EsdResult:
    """Locate the temperature where the detected state's concurrence
    dies, for fixed gate placement.

    Only the gate's placement (``tau_g``, ``w_g``) is kept fixed; the
    integration steps are rebuilt at every temperature so the inner step
    keeps resolving the phonon-broadened coherence decay.  When ``gate``
    is None a delayed default gate (tau_g=0.5 ns, w_g=0.1 ns) is used.
    The coarse scan covers the range inclusive; bisection then shrinks
    the death bracket below ``tol`` kelvin.
    """
    t_min, t_max = t_range
    if not 0.0 < t_min < t_max:
        raise ParameterError(f"need 0 < t_min < t_max, got {t_range}")
    if coarse_step <= 0 or tol <= 0:
        raise ParameterError("coarse_step and tol must be > 0")
    tau_g = gate.tau_g if gate is not None else ESD_DEFAULT_TAU_G
    w_g = gate.w_g if gate is not None else ESD_DEFAULT_W_G

    evaluations = 0

    def c_at(temperature: float) -> float:
        nonlocal evaluations
        evaluations += 1
        p = params.replace(temperature=temperature)
        return concurrence(detected_state(p, tau_g=tau_g, w_g=w_g))

    n = max(1, int(math.ceil((t_max - t_min) / coarse_step)))
    temps = np.linspace(t_min, t_max, n + 1)
    values = np.array([c_at(t) for t in temps])

    alive = values > 0.0
    deaths = [i for i in range(len(temps) - 1) if alive[i] and not alive[i + 1]]
    births = [i for i in range(len(temps) - 1) if not alive[i] and alive[i + 1]]
    rising = bool(np.any(np.diff(values) > 1.0e-9))
    multi = len(deaths) > 1 or len(births) > 0 or rising

    def result(found, temperature, bracket):
        return EsdResult(
            fss=params.fss,
            g_noise=params.g_noise,
            found=found,
            temperature=temperature,
            bracket=bracket,
            tolerance=tol,
            multi_crossing=multi,
            t_min=t_min,
            t_max=t_max,
            evaluations=evaluations,
            coarse_temperatures=temps,
            coarse_concurrences=values,
        )

    if not deaths:
        # positive throughout, zero throughout, or dead-then-alive:
        # no death transition inside the range
        return result(False, None, None)

    lo, hi = float(temps[deaths[0]]), float(temps[deaths[0] + 1])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if c_at(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return result(True, 0.5 * (lo + hi), (lo, hi))
