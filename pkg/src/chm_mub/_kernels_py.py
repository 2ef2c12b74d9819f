"""Pure-Python (numpy) implementations of the search hot kernels.

Mirrors ``_kernels.pyx`` operation for operation; the compiled module is
preferred at import time when available.  Both backends must implement the
same parametrization so candidate angles mean the same thing everywhere:

* 36 angles per 6x6 unitary: 15 Givens rotation angles, 15 Givens phases,
  6 diagonal phases.
* ``U = diag(exp(i chi)) @ G(0,1) @ G(0,2) @ ... @ G(4,5)`` with the pair
  list in lexicographic order and
  ``G[j,j] = cos t, G[j,k] = -sin t e^{-i p}, G[k,j] = sin t e^{i p},
  G[k,k] = cos t``.
"""

from __future__ import annotations

import numpy as np

N = 6
N_ANGLES = 36
_PAIRS = [(j, k) for j in range(N) for k in range(j + 1, N)]
_INV_SQRT6 = 1.0 / np.sqrt(6.0)


def unitary_from_angles(angles: np.ndarray) -> np.ndarray:
    """Build a 6x6 unitary from 36 real angle coordinates."""
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (N_ANGLES,):
        raise ValueError(f"expected {N_ANGLES} angles, got shape {angles.shape}")
    u = np.eye(N, dtype=complex)
    for p, (j, k) in enumerate(_PAIRS):
        c = np.cos(angles[p])
        s = np.sin(angles[p])
        ph = np.exp(1j * angles[15 + p])
        col_j = u[:, j].copy()
        col_k = u[:, k].copy()
        u[:, j] = col_j * c + col_k * (s * ph)
        u[:, k] = col_j * (-s * np.conj(ph)) + col_k * c
    u *= np.exp(1j * angles[30:])[:, None]
    return u


def trio_penalty_angles(m: np.ndarray, angles2: np.ndarray, angles3: np.ndarray) -> float:
    """Unbiasedness penalty for a candidate pair completing ``m`` to a trio.

    The candidates are exactly unitary by construction, so the penalty is
    the sum of squared deviations of every cross-Gram entry modulus from
    1/sqrt(6) (pairs (m,b2), (m,b3), (b2,b3)) plus the same for the entries
    of b2 and b3 themselves (the CHM condition).
    """
    b2 = unitary_from_angles(angles2)
    b3 = unitary_from_angles(angles3)
    mh = np.conj(m).T
    pen = 0.0
    for prod in (mh @ b2, mh @ b3, np.conj(b2).T @ b3):
        dev = np.abs(prod) - _INV_SQRT6
        pen += float(np.sum(dev * dev))
    for b in (b2, b3):
        dev = np.abs(b) - _INV_SQRT6
        pen += float(np.sum(dev * dev))
    return pen
