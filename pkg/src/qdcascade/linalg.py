"""Small dense complex linear algebra used by the cascade simulator.

Everything here operates on square complex matrices of modest size (the
simulator needs 2x2 Pauli blocks, 4x4 density matrices and the 16x16
superoperator).  The heavy lifting is delegated to numpy/scipy LAPACK
routines; this module fixes the conventions the rest of the package
relies on:

* vectorization is column-stacking, so ``vec(A @ rho @ B) ==
  kron(B.T, A) @ vec(rho)``;
* eigenvalue spectra are sorted by descending real part (ties broken by
  descending imaginary part);
* public operations reject non-finite results instead of propagating
  NaN/Inf.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import NumericalError, ParameterError

__all__ = [
    "hermitize",
    "expm",
    "eigenvalues_general",
    "vectorize",
    "devectorize",
    "require_finite",
]


def require_finite(m: np.ndarray, context: str = "matrix") -> np.ndarray:
    """Raise :class:`NumericalError` if ``m`` contains NaN or Inf."""
    if not np.all(np.isfinite(m.view(float) if np.iscomplexobj(m) else m)):
        raise NumericalError(f"non-finite entries in {context}")
    return m


def _require_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {m.shape}")
    return m


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return the Hermitian part ``(m + m†) / 2``.

    Idempotent on Hermitian input; raises :class:`ParameterError` for
    non-square input.
    """
    m = _require_square(m)
    return 0.5 * (m + m.conj().T)


def expm(m: np.ndarray) -> np.ndarray:
    """Matrix exponential of a small dense complex matrix.

    Uses scipy's scaling-and-squaring Pade implementation.  Raises
    :class:`NumericalError` when the result overflows (pathological
    norms), so callers never see Inf entries.
    """
    m = _require_square(m)
    require_finite(m, "expm input")
    # overflow is detected on the result; silence the intermediate warning
    with np.errstate(over="ignore", invalid="ignore"):
        out = scipy.linalg.expm(np.asarray(m, dtype=complex))
    return require_finite(out, "expm result (input norm out of range)")


def eigenvalues_general(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a general (possibly non-Hermitian) matrix.

    Returns a complex array sorted by descending real part, with ties
    broken by descending imaginary part so the ordering is deterministic.
    """
    m = _require_square(m)
    require_finite(m, "eigenvalue input")
    try:
        vals = np.linalg.eigvals(np.asarray(m, dtype=complex))
    except np.linalg.LinAlgError as exc:  # QR iteration failed to converge
        raise NumericalError(f"eigenvalue iteration did not converge: {exc}") from exc
    order = np.lexsort((-vals.imag, -vals.real))
    return vals[order]


def vectorize(m: np.ndarray) -> np.ndarray:
    """Column-stack a square matrix into a vector of length ``dim**2``.

    For ``[[a, b], [c, d]]`` the result is ``(a, c, b, d)``.
    """
    m = _require_square(m)
    return np.asarray(m, dtype=complex).flatten(order="F")


def devectorize(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`; length must be a perfect square."""
    v = np.asarray(v, dtype=complex).ravel()
    dim = int(round(np.sqrt(v.size)))
    if dim * dim != v.size:
        raise ParameterError(f"vector length {v.size} is not a perfect square")
    return v.reshape((dim, dim), order="F")
