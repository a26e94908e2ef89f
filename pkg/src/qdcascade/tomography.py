"""Composition of the measured two-photon state from its components.

The detected state mixes three contributions: the polarization-correlated
cascade state, a classically correlated state carrying the same diagonal
but no coherence (photon pairs rendered distinguishable by their
spectra), and a flat background from uncorrelated coincidences,

    rho_tot = ( eta rho_pol + (1 - eta) rho_noc + g I/4 ) / (1 + g).

``eta`` is the spectral overlap of the interfering emission channels and
``g`` the background weight relative to the cascade signal.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

__all__ = ["make_noc", "mix_total", "overlap_eta_lorentzian"]


def make_noc(rho_pol: np.ndarray) -> np.ndarray:
    """Coherence-free counterpart of a polarization matrix.

    Keeps the diagonal (the coincidence probabilities survive spectral
    which-path labeling) and zeroes every off-diagonal element.
    """
    rho_pol = np.asarray(rho_pol, dtype=complex)
    if rho_pol.shape != (4, 4):
        raise ParameterError(f"expected a 4x4 matrix, got shape {rho_pol.shape}")
    return np.diag(np.diag(rho_pol))


def mix_total(rho_pol: np.ndarray, eta: float, g: float) -> np.ndarray:
    """Detected state: overlap-weighted coherent/incoherent mixture plus
    a flat background of weight ``g``, renormalized to unit trace."""
    if not 0.0 <= eta <= 1.0:
        raise ParameterError(f"eta must lie in [0, 1], got {eta}")
    if g < 0.0:
        raise ParameterError(f"g must be >= 0, got {g}")
    rho_pol = np.asarray(rho_pol, dtype=complex)
    if rho_pol.shape != (4, 4):
        raise ParameterError(f"expected a 4x4 matrix, got shape {rho_pol.shape}")
    rho_noc = make_noc(rho_pol)
    background = np.eye(4, dtype=complex) / 4.0
    return (eta * rho_pol + (1.0 - eta) * rho_noc + g * background) / (1.0 + g)


def overlap_eta_lorentzian(fss: float, gamma_x: float) -> float:
    """Spectral overlap of two Lorentzian emission lines split by the
    fine-structure splitting ``fss`` (ueV), each of radiative width
    ``gamma_x`` (ns^-1, converted to an energy width internally).

    Provided as a physically motivated estimate of ``eta``; the mixing
    itself treats ``eta`` as a free input.
    """
    from .model import HBAR

    if gamma_x <= 0:
        raise ParameterError(f"gamma_x must be > 0, got {gamma_x}")
    if fss < 0:
        raise ParameterError(f"fss must be >= 0, got {fss}")
    width = HBAR * gamma_x
    return 4.0 * width * width / (fss * fss + 4.0 * width * width)
