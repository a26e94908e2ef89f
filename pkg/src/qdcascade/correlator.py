"""Two-time photon correlations and the gate-integrated polarization matrix.

The two-photon polarization state is reconstructed from four-operator
dipole correlators via the quantum regression theorem: for a delay
``tau >= 0`` the correlator is obtained by sandwiching the evolved state
between lowering operators, propagating that "seed" with the same
Liouvillian, and tracing against the second-photon projector,

    <A(t) B(t+tau) C(t+tau) D(t)> = Tr[ B C  exp(L tau)( D rho(t) A ) ].

Each matrix element of the polarization density matrix is this correlator
integrated over the biexciton emission time t (from the excitation pulse
until the biexciton population is negligible) and over the detection gate
``tau_g <= tau <= tau_g + w_g`` applied to the delay between the two
photons.

The assembler factors the double Simpson sum using linearity: the time
integral of rho(t) and the gate integral of exp(L tau) are accumulated
once and reused for all sixteen elements.  This is algebraically identical
to summing the pointwise correlator over the same grid (a test asserts
the equivalence) but costs O(n) matrix products instead of O(n^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateGateError, ParameterError
from .linalg import devectorize, expm, require_finite, vectorize
from .model import (
    BIEXCITON,
    DIM,
    EXCITON_H,
    EXCITON_V,
    GROUND,
    HBAR,
    CascadeParams,
    exciton_coherence_decay,
    initial_biexciton_state,
    phonon_rates,
)

__all__ = [
    "BASIS_LABELS",
    "GateWindow",
    "RawPolarizationMatrix",
    "lowering_operator",
    "two_time_element",
    "assemble_raw_matrix",
    "analytic_raw_matrix",
    "analytic_coherence",
]

#: Two-photon basis order: first letter = biexciton photon, second = exciton photon.
BASIS_LABELS = ("HH", "HV", "VH", "VV")

_PHOTON1 = {"H": (EXCITON_H, BIEXCITON), "V": (EXCITON_V, BIEXCITON)}
_PHOTON2 = {"H": (GROUND, EXCITON_H), "V": (GROUND, EXCITON_V)}


def lowering_operator(photon: int, pol: str) -> np.ndarray:
    """Dipole lowering operator for the given emission step.

    ``photon=1`` is the biexciton photon (|3> -> exciton), ``photon=2``
    the exciton photon (exciton -> |0>); ``pol`` is ``"H"`` or ``"V"``.
    """
    table = {1: _PHOTON1, 2: _PHOTON2}
    if photon not in table:
        raise ParameterError(f"photon index must be 1 or 2, got {photon}")
    if pol not in table[photon]:
        raise ParameterError(f"polarization must be 'H' or 'V', got {pol!r}")
    i, j = table[photon][pol]
    op = np.zeros((DIM, DIM), dtype=complex)
    op[i, j] = 1.0
    return op


@dataclass(frozen=True)
class GateWindow:
    """Detection gate and integration grid for the correlator assembly.

    ``tau_g`` / ``w_g`` are the gate delay and width applied to the
    exciton photon; ``t_max`` bounds the biexciton emission-time
    integral; ``dt_outer`` / ``dt_inner`` are the Simpson step targets of
    the t and tau grids (actual steps are rounded down so each interval
    count is even).
    """

    tau_g: float
    w_g: float
    t_max: float
    dt_outer: float
    dt_inner: float

    def __post_init__(self) -> None:
        if self.tau_g < 0:
            raise ParameterError(f"tau_g must be >= 0, got {self.tau_g}")
        if self.w_g <= 0:
            raise ParameterError(f"w_g must be > 0, got {self.w_g}")
        if self.t_max <= 0 or self.dt_outer <= 0 or self.dt_inner <= 0:
            raise ParameterError("t_max, dt_outer and dt_inner must be > 0")

    @classmethod
    def auto(
        cls,
        params: CascadeParams,
        tau_g: float = 0.0,
        w_g: float = 0.049,
        *,
        t_max: float | None = None,
        dt_outer: float | None = None,
        dt_inner: float | None = None,
    ) -> "GateWindow":
        """Build a gate with steps resolving both the coherence
        oscillation and every decay rate.

        ``t_max`` defaults to 14 biexciton lifetimes, where the residual
        population is below 1e-6 of the initial one.  Explicit keyword
        values override the derived ones.
        """
        gxx = params.biexciton_rate
        if gxx <= 0 and t_max is None:
            raise ParameterError(
                "biexciton decay rate is zero: no emission-time horizon; pass t_max"
            )
        gamma = params.coherence_total_rate()
        if t_max is None:
            t_max = 14.0 / gxx
        if dt_inner is None:
            bounds = [w_g / 8.0]
            if params.fss > 0:
                bounds.append(0.008 * 2.0 * math.pi * HBAR / params.fss)
            if gamma > 0:
                bounds.append(0.01 / gamma)
            dt_inner = min(bounds)
        if dt_outer is None:
            bounds = [t_max / 32.0]
            if gxx > 0:
                bounds.append(0.05 / gxx)
            if params.fss > 0:
                bounds.append(0.05 * 2.0 * math.pi * HBAR / params.fss)
            dt_outer = min(bounds)
        return cls(tau_g=tau_g, w_g=w_g, t_max=t_max, dt_outer=dt_outer, dt_inner=dt_inner)

    def validate_against(self, params: CascadeParams) -> None:
        """Enforce the step contract: the inner step must resolve the
        coherence oscillation and the total coherence decay."""
        gamma = params.coherence_total_rate()
        limit = math.inf
        if params.fss > 0:
            limit = 0.05 * 2.0 * math.pi * HBAR / params.fss
        if gamma > 0:
            limit = min(limit, 0.05 / gamma)
        if self.dt_inner > limit * (1.0 + 1e-12):
            raise ParameterError(
                f"dt_inner={self.dt_inner} too coarse: must be <= {limit:.4g} "
                "for these parameters"
            )

    def refined(self, factor: float) -> "GateWindow":
        """Same gate with both integration steps divided by ``factor``."""
        return replace(
            self, dt_outer=self.dt_outer / factor, dt_inner=self.dt_inner / factor
        )

    def outer_nodes(self) -> np.ndarray:
        n = _even_intervals(self.t_max, self.dt_outer, minimum=8)
        return np.linspace(0.0, self.t_max, n + 1)

    def inner_nodes(self) -> np.ndarray:
        n = _even_intervals(self.w_g, self.dt_inner, minimum=8)
        return np.linspace(self.tau_g, self.tau_g + self.w_g, n + 1)


@dataclass(frozen=True)
class RawPolarizationMatrix:
    """Gate-integrated two-photon polarization matrix in the
    (HH, HV, VH, VV) basis, plus whether the unit-trace normalization
    has been applied."""

    entries: np.ndarray
    normalized: bool

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


def _even_intervals(length: float, step: float, minimum: int = 8) -> int:
    n = max(minimum, int(math.ceil(length / step)))
    return n + (n % 2)


def _simpson_weights(nodes: np.ndarray) -> np.ndarray:
    n = nodes.size - 1
    h = (nodes[-1] - nodes[0]) / n
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def two_time_element(
    lio: np.ndarray,
    rho0: np.ndarray,
    mu: str,
    nu: str,
    xi: str,
    zeta: str,
    t: float,
    tau: float,
) -> complex:
    """Pointwise four-operator correlator for one polarization choice.

    ``mu``/``nu`` label the bra side (first/second photon), ``xi``/
    ``zeta`` the ket side; the result is the integrand of the
    polarization-matrix element <mu nu| rho_pol |xi zeta> before gate
    integration.  Only ``tau >= 0`` is defined; the other half-plane is
    recovered by conjugate symmetry at assembly time.

    This is the reference (slow) path used in tests; the assembler
    integrates the same quantity without per-node exponentials.
    """
    if tau < 0:
        raise ParameterError("two_time_element requires tau >= 0 (detector ordering)")
    if t < 0:
        raise ParameterError("two_time_element requires t >= 0")
    sig_mu1 = lowering_operator(1, mu)
    sig_xi1 = lowering_operator(1, xi)
    sig_nu2 = lowering_operator(2, nu)
    sig_zeta2 = lowering_operator(2, zeta)
    rho_t = devectorize(expm(lio * t) @ vectorize(rho0))
    seed = sig_xi1 @ rho_t @ sig_mu1.conj().T
    propagated = devectorize(expm(lio * tau) @ vectorize(seed))
    measure = sig_nu2.conj().T @ sig_zeta2
    return complex(np.trace(measure @ propagated))


def _time_averaged_state(lio: np.ndarray, rho0: np.ndarray, gate: GateWindow) -> np.ndarray:
    """Simpson integral of rho(t) over [0, t_max], as a 4x4 matrix."""
    nodes = gate.outer_nodes()
    weights = _simpson_weights(nodes)
    step = expm(lio * (nodes[1] - nodes[0]))
    v = vectorize(rho0)
    acc = weights[0] * v
    for w in weights[1:]:
        v = step @ v
        acc = acc + w * v
    return devectorize(acc)


def _gate_kernel(lio: np.ndarray, gate: GateWindow) -> np.ndarray:
    """Simpson integral of exp(L tau) over the gate, as a 16x16 map."""
    nodes = gate.inner_nodes()
    weights = _simpson_weights(nodes)
    prop = expm(lio * gate.tau_g) if gate.tau_g > 0 else np.eye(DIM * DIM, dtype=complex)
    step = expm(lio * (nodes[1] - nodes[0]))
    acc = weights[0] * prop
    for w in weights[1:]:
        prop = prop @ step
        acc = acc + w * prop
    return acc


def assemble_raw_matrix(
    lio: np.ndarray,
    rho0: np.ndarray | None,
    gate: GateWindow,
    *,
    normalize: bool = True,
) -> RawPolarizationMatrix:
    """Gate-integrated polarization density matrix of the photon pair.

    Integrates the correlator over emission time and gate delay for the
    ten independent basis pairs, fills the lower triangle by conjugate
    symmetry, and (by default) divides by the trace.  A gate that
    captures no signal raises :class:`DegenerateGateError`.
    """
    if rho0 is None:
        rho0 = initial_biexciton_state()
    rho_bar = _time_averaged_state(lio, rho0, gate)
    kernel = _gate_kernel(lio, gate)

    sig1 = {pol: lowering_operator(1, pol) for pol in "HV"}
    measure = {
        (nu, zeta): lowering_operator(2, nu).conj().T @ lowering_operator(2, zeta)
        for nu in "HV"
        for zeta in "HV"
    }
    gated = {}
    for xi in "HV":
        for mu in "HV":
            seed = sig1[xi] @ rho_bar @ sig1[mu].conj().T
            gated[(mu, xi)] = devectorize(kernel @ vectorize(seed))

    out = np.zeros((4, 4), dtype=complex)
    for row, (mu, nu) in enumerate((l[0], l[1]) for l in BASIS_LABELS):
        for col, (xi, zeta) in enumerate((l[0], l[1]) for l in BASIS_LABELS):
            if col < row:
                continue
            value = np.trace(measure[(nu, zeta)] @ gated[(mu, xi)])
            if col == row:
                out[row, row] = value.real
            else:
                out[row, col] = value
                out[col, row] = value.conjugate()
    require_finite(out, "assembled polarization matrix")

    if normalize:
        trace = float(np.trace(out).real)
        if not trace > 0.0:
            raise DegenerateGateError(
                f"gate captured no signal (trace = {trace:g}); "
                "widen the gate or reduce tau_g"
            )
        out = out / trace
    return RawPolarizationMatrix(entries=out, normalized=normalize)


def _exp_gate_integral(lam: complex, a: float, w: float) -> complex:
    """Integral of exp(lam * tau) over [a, a + w], stable for small lam."""
    z = lam * w
    if abs(z) < 1.0e-6:
        # cubic series of (e^z - 1)/z keeps full precision near z = 0
        series = w * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0)
        return np.exp(lam * a) * series
    return np.exp(lam * a) * (np.exp(z) - 1.0) / lam


def _texp_gate_integral(lam: float, a: float, w: float) -> float:
    """Integral of tau * exp(lam * tau) over [a, a + w]."""
    b = a + w
    if abs(lam) * max(abs(a), abs(b)) < 1.0e-8:
        return 0.5 * (b * b - a * a)
    def anti(tau: float) -> float:
        return math.exp(lam * tau) * (tau / lam - 1.0 / (lam * lam))
    return anti(b) - anti(a)


def analytic_raw_matrix(params: CascadeParams, tau_g: float, w_g: float) -> np.ndarray:
    """Closed-form normalized polarization matrix for the biexciton
    initial state.

    The spin sector reduces to a 2x2 rate equation whose propagator is
    diagonalized in closed form, and the coherence element is a single
    damped oscillation; both are gate-integrated analytically.  The
    emission-time integral contributes the same factor to every element
    and cancels in the normalization, so no time horizon enters.

    Independent of the Simpson assembly; used as its cross-check.
    """
    if tau_g < 0 or w_g <= 0:
        raise ParameterError("analytic_raw_matrix requires tau_g >= 0 and w_g > 0")
    pr = phonon_rates(params)
    if not math.isfinite(pr.n_bose) and (pr.gamma12 > 0 or pr.gamma21 > 0):
        raise ParameterError("phonon rates are not finite for these parameters")
    # spin-manifold rate matrix; index 0 = V exciton, index 1 = H exciton
    rate = np.array(
        [
            [-(params.gamma10 + pr.gamma12), pr.gamma21],
            [pr.gamma12, -(params.gamma20 + pr.gamma21)],
        ]
    )
    tr = rate[0, 0] + rate[1, 1]
    det = rate[0, 0] * rate[1, 1] - rate[0, 1] * rate[1, 0]
    disc = max(tr * tr - 4.0 * det, 0.0)
    root = math.sqrt(disc)
    lam_p = 0.5 * (tr + root)
    lam_m = 0.5 * (tr - root)
    eye = np.eye(2)
    if root > 1.0e-12 * max(1.0, abs(tr)):
        proj_p = (rate - lam_m * eye) / (lam_p - lam_m)
        proj_m = (rate - lam_p * eye) / (lam_m - lam_p)
        gated = (
            _exp_gate_integral(lam_p, tau_g, w_g).real * proj_p
            + _exp_gate_integral(lam_m, tau_g, w_g).real * proj_m
        )
    else:
        lam = 0.5 * tr
        gated = _exp_gate_integral(lam, tau_g, w_g).real * eye + _texp_gate_integral(
            lam, tau_g, w_g
        ) * (rate - lam * eye)

    coherence = _exp_gate_integral(exciton_coherence_decay(params), tau_g, w_g)
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = gated[1, 1]  # HH: start H, detect H
    out[1, 1] = gated[0, 1]  # HV: start H, detect V
    out[2, 2] = gated[1, 0]  # VH: start V, detect H
    out[3, 3] = gated[0, 0]  # VV: start V, detect V
    out[0, 3] = coherence
    out[3, 0] = coherence.conjugate()
    trace = out.trace().real
    if not trace > 0.0:
        raise DegenerateGateError(f"gate captured no signal (trace = {trace:g})")
    return out / trace


def analytic_coherence(params: CascadeParams, tau_g: float, w_g: float) -> complex:
    """Normalized HH-VV coherence of the gated cascade state, closed form."""
    return complex(analytic_raw_matrix(params, tau_g, w_g)[0, 3])
