"""Four-level biexciton cascade: parameters, phonon rates, Liouvillian.

Level convention used throughout the package::

    |0>  ground state (both photons emitted)
    |1>  V-polarized exciton
    |2>  H-polarized exciton (higher by the fine-structure splitting)
    |3>  biexciton (initial state after pulsed excitation)

Radiative decay runs 3->2, 3->1 (biexciton photon) and 2->0, 1->0
(exciton photon).  Acoustic phonons drive incoherent hopping between the
two exciton levels, with absorption 1->2 and emission 2->1 obeying
detailed balance at the lattice temperature.

Units: energies in micro-eV, times in ns, rates in 1/ns and temperatures
in K.  hbar and k_B below convert between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParameterError
from .linalg import vectorize

__all__ = [
    "HBAR",
    "KB",
    "CascadeParams",
    "PhononRates",
    "bose_occupation",
    "phonon_rates",
    "build_liouvillian",
    "exciton_coherence_decay",
    "GROUND",
    "EXCITON_V",
    "EXCITON_H",
    "BIEXCITON",
]

#: Reduced Planck constant, micro-eV * ns.
HBAR = 0.6582119569
#: Boltzmann constant, micro-eV / K.
KB = 86.17333

GROUND, EXCITON_V, EXCITON_H, BIEXCITON = 0, 1, 2, 3

DIM = 4


@dataclass(frozen=True)
class CascadeParams:
    """All physical inputs of a simulation point.

    Attributes
    ----------
    gamma32, gamma31 : float
        Biexciton radiative rates into the H / V exciton, 1/ns.
    gamma20, gamma10 : float
        H / V exciton radiative rates to the ground state, 1/ns.
    fss : float
        Fine-structure splitting between the exciton levels, micro-eV.
    temperature : float
        Lattice temperature, K.
    kappa0 : float
        Phonon coupling prefactor in ``kappa = kappa0 * fss**3``,
        1/(ns * micro-eV^3).  The default reproduces a per-direction
        scattering rate of about 0.1/ns at fss=2.5 micro-eV and 10 K,
        the same order as the radiative rates; it is illustrative, not a
        measured constant.
    eta : float
        Spectral overlap fraction of the two exciton emission lines
        (coherent share of the detected pairs), in [0, 1].
    g_noise : float
        Weight of the flat background-noise admixture, >= 0.
    biexciton_energy : float
        Energy of the biexciton level, micro-eV.  Kept for completeness;
        it cannot affect any two-photon observable because no populated
        coherence involves the biexciton level (tested).
    """

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

    def __post_init__(self) -> None:
        for name in (
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
        ):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite, got {getattr(self, name)}")
        for name in ("gamma32", "gamma31", "gamma20", "gamma10", "kappa0"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.fss < 0:
            raise ParameterError(f"fss must be >= 0, got {self.fss}")
        if self.temperature < 0:
            raise ParameterError(f"temperature must be >= 0, got {self.temperature}")
        if not 0.0 <= self.eta <= 1.0:
            raise ParameterError(f"eta must be in [0, 1], got {self.eta}")
        if self.g_noise < 0:
            raise ParameterError(f"g_noise must be >= 0, got {self.g_noise}")

    def replace(self, **changes) -> "CascadeParams":
        return replace(self, **changes)

    @property
    def biexciton_rate(self) -> float:
        """Total biexciton decay rate gamma32 + gamma31, 1/ns."""
        return self.gamma32 + self.gamma31

    def coherence_total_rate(self) -> float:
        """Total damping rate of the exciton coherence: the sum of both
        exciton radiative rates and both phonon rates, 1/ns."""
        ph = phonon_rates(self)
        return self.gamma20 + self.gamma10 + ph.gamma12 + ph.gamma21


@dataclass(frozen=True)
class PhononRates:
    """Phonon-assisted hopping rates between the exciton levels.

    ``gamma12`` is absorption (V exciton up to H exciton), ``gamma21``
    emission (H down to V); ``n_bose`` is the thermal phonon occupation
    at the splitting energy (``inf`` flags the degenerate fss=0 case,
    where the cubic coupling kills both rates anyway).
    """

    gamma12: float
    gamma21: float
    n_bose: float


def bose_occupation(fss: float, temperature: float) -> float:
    """Thermal phonon occupation at energy ``fss``.

    Returns 0 at zero temperature and ``inf`` (a flag, not a usable
    rate) for fss=0 at finite temperature; :func:`phonon_rates`
    regularizes that divergence through the cubic coupling.  For
    ``fss/(kB*T) < 1e-6`` the series limit ``kB*T/fss - 1/2`` is used to
    avoid cancellation in ``exp(x) - 1``.
    """
    if fss < 0 or temperature < 0:
        raise ParameterError("bose_occupation needs fss >= 0 and temperature >= 0")
    if temperature == 0.0:
        return 0.0
    if fss == 0.0:
        return math.inf
    x = fss / (KB * temperature)
    if x < 1e-6:
        return 1.0 / x - 0.5
    return 1.0 / math.expm1(x)


def phonon_rates(p: CascadeParams) -> PhononRates:
    """Temperature- and splitting-dependent exciton spin-flip rates.

    The coupling ``kappa = kappa0 * fss**3`` multiplies the Bose factors:
    absorption ``kappa * n``, emission ``kappa * (n + 1)``.  At fss=0
    both products vanish in the continuous limit (``kappa*n ->
    kappa0 * fss**2 * kB * T``), so zero is returned for both.
    """
    if p.fss == 0.0:
        n = math.inf if p.temperature > 0 else 0.0
        return PhononRates(gamma12=0.0, gamma21=0.0, n_bose=n)
    kappa = p.kappa0 * p.fss**3
    n = bose_occupation(p.fss, p.temperature)
    return PhononRates(gamma12=kappa * n, gamma21=kappa * (n + 1.0), n_bose=n)


def _ket_bra(i: int, j: int) -> np.ndarray:
    m = np.zeros((DIM, DIM), dtype=complex)
    m[i, j] = 1.0
    return m


def _dissipator(jump: np.ndarray, rate: float) -> np.ndarray:
    """Vectorized GKSL dissipator rate*(A . A† - {A†A, .}/2)."""
    eye = np.eye(DIM)
    adag_a = jump.conj().T @ jump
    return rate * (
        np.kron(jump.conj(), jump)
        - 0.5 * np.kron(eye, adag_a)
        - 0.5 * np.kron(adag_a.T, eye)
    )


def build_liouvillian(p: CascadeParams) -> np.ndarray:
    """16x16 generator of the master equation, acting on column-stacked
    density matrices: ``d vec(rho)/dt = L @ vec(rho)``.

    The coherent part is ``-i[H, .]/hbar`` with ``H = diag(0, 0, fss,
    biexciton_energy)``; the dissipative part is the trace-preserving
    GKSL sum over the four radiative jumps and the two phonon jumps.
    """
    ph = phonon_rates(p)
    omega = np.array([0.0, 0.0, p.fss, p.biexciton_energy]) / HBAR
    h = np.diag(omega).astype(complex)
    eye = np.eye(DIM)
    lio = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    jumps = [
        (_ket_bra(EXCITON_H, BIEXCITON), p.gamma32),
        (_ket_bra(EXCITON_V, BIEXCITON), p.gamma31),
        (_ket_bra(GROUND, EXCITON_H), p.gamma20),
        (_ket_bra(GROUND, EXCITON_V), p.gamma10),
        (_ket_bra(EXCITON_V, EXCITON_H), ph.gamma21),
        (_ket_bra(EXCITON_H, EXCITON_V), ph.gamma12),
    ]
    for jump, rate in jumps:
        if rate != 0.0:
            lio = lio + _dissipator(jump, rate)
    return lio


def exciton_coherence_decay(p: CascadeParams) -> complex:
    """Complex rate governing the H/V exciton coherence, 1/ns.

    Equals ``i*fss/hbar - Gamma/2`` where Gamma sums both exciton
    radiative rates and both phonon rates.  This is exactly the
    eigenvalue of the Liouvillian on the sector spanned by the
    |V-exciton><H-exciton| operator, which carries the two-photon
    HH/VV coherence.
    """
    return 1j * p.fss / HBAR - 0.5 * p.coherence_total_rate()


def coherence_sector_index() -> int:
    """Index of the |1><2| entry in a column-stacked 4x4 matrix."""
    return EXCITON_H * DIM + EXCITON_V


def initial_biexciton_state() -> np.ndarray:
    """Density matrix right after pulsed excitation: all population in
    the biexciton level."""
    return _ket_bra(BIEXCITON, BIEXCITON)


def coherence_seed() -> np.ndarray:
    """The |1><2| operator whose decay rate
    :func:`exciton_coherence_decay` predicts."""
    return _ket_bra(EXCITON_V, EXCITON_H)


def vectorized_initial_state() -> np.ndarray:
    return vectorize(initial_biexciton_state())
