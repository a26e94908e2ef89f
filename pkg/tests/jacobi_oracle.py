"""Independent Hermitian eigensolver used as a test oracle.

Classical cyclic Jacobi iteration for complex Hermitian matrices:
repeatedly apply unitary plane rotations that zero one off-diagonal
element until the off-diagonal mass is negligible.  Written from the
textbook algorithm on purpose, with no LAPACK involvement, so it can
cross-check the production eigenvalue route.
"""

from __future__ import annotations

import math

import numpy as np


def hermitian_eigenvalues(matrix: np.ndarray, sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix, descending.

    Cyclic Jacobi: for each pair (p, q) build the unitary rotation that
    annihilates A[p, q], conjugate, and repeat until convergence.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"need a square matrix, got {a.shape}")
    if np.abs(a - a.conj().T).max() > 1e-12 * max(1.0, np.abs(a).max()):
        raise ValueError("matrix is not Hermitian")
    scale = max(1.0, np.abs(a).max())

    for _ in range(sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(a[p, q]))
        if off <= 1e-14 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-16 * scale:
                    continue
                phase = apq / abs(apq)
                # real symmetric 2x2 subproblem after factoring the phase
                theta = 0.5 * math.atan2(
                    2.0 * abs(apq), (a[p, p].real - a[q, q].real)
                )
                c = math.cos(theta)
                s = phase * math.sin(theta)
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[p, q] = -s
                rot[q, p] = s.conjugate()
                rot[q, q] = c
                a = rot.conj().T @ a @ rot

    vals = np.sort(a.diagonal().real)[::-1]
    return vals
