"""Reduction of two-qubit states to canonical form under local unitaries.

The canonical representative has a diagonal connected-correlation matrix
diag(L1, L2, L3) with L1 >= L2 >= |L3| and the sign of L3 fixed by
det(Lambda).  The measurement along the axis of the largest correlation
(x for canonical states) is the maximal-correlation-direction measurement
(MCDM); for the original state it is obtained by rotating that axis back
through the canonicalizing rotation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fano_bloch import correlation_matrix
from .linalg import su2_from_so3, validate_density_matrix

# below this, det(Lambda) carries no usable sign information
DEGENERATE_DET_TOL = 1e-12
_DIAGONAL_FAST_PATH_TOL = 1e-13


@dataclass(frozen=True)
class CanonicalDecomposition:
    """A state together with the local transformation that canonicalizes it.

    ``canonical_state = (u1 x u2) rho (u1 x u2)^dag`` and ``o1``, ``o2`` are
    the SO(3) rotations lifted by ``u1``, ``u2``.  ``lambda_diag`` holds the
    ordered correlation triple of the canonical state.
    """

    canonical_state: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    o1: np.ndarray
    o2: np.ndarray
    lambda_diag: np.ndarray


def _signed_svd(lam: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD with both factors forced into SO(3), the sign moved onto s[2].

    Flipping a single singular value's sign is impossible inside
    SO(3) x SO(3) (it flips the determinant), so s[2] ends up carrying
    sign(det lam): s[0] >= s[1] >= |s[2]|.
    """
    u, s, vt = np.linalg.svd(lam)
    u = u.copy()
    v = vt.T.copy()
    s = s.copy()
    if np.linalg.det(u) < 0.0:
        u[:, 2] *= -1.0
        s[2] = -s[2]
    if np.linalg.det(v) < 0.0:
        v[:, 2] *= -1.0
        s[2] = -s[2]
    return u, s, v


def to_canonical(rho) -> CanonicalDecomposition:
    """Canonical decomposition of an arbitrary two-qubit state.

    Every state has one; for degenerate correlation spectra the
    decomposition is not unique and the SVD branch is kept, which makes
    repeated runs reproducible.
    """
    rho = validate_density_matrix(rho)
    lam = correlation_matrix(rho)

    d = lam.diagonal()
    off = np.max(np.abs(lam - np.diag(d)))
    if off <= _DIAGONAL_FAST_PATH_TOL and d[0] >= d[1] >= abs(d[2]):
        # already canonical: keep the identity transformation
        o1 = np.eye(3)
        o2 = np.eye(3)
        s = d.astype(float).copy()
    else:
        u, s, v = _signed_svd(lam)
        o1 = u.T
        o2 = v.T
    if s[2] < 0.0 and abs(s[2]) <= DEGENERATE_DET_TOL:
        # the sign is below noise; report the non-negative representative
        s[2] = -s[2]

    u1 = su2_from_so3(o1)
    u2 = su2_from_so3(o2)
    w = np.kron(u1, u2)
    state = w @ rho @ w.conj().T
    state = (state + state.conj().T) / 2.0
    return CanonicalDecomposition(canonical_state=state, u1=u1, u2=u2,
                                  o1=o1, o2=o2, lambda_diag=s)


def is_canonical(rho, tol: float = 1e-9) -> bool:
    """Whether the connected-correlation matrix is diagonal and ordered within ``tol``."""
    lam = correlation_matrix(validate_density_matrix(rho))
    d = lam.diagonal()
    if np.max(np.abs(lam - np.diag(d))) > tol:
        return False
    return d[0] >= d[1] - tol and d[1] >= abs(d[2]) - tol


def mcdm_direction(decomp: CanonicalDecomposition) -> np.ndarray:
    """Bloch axis of the maximal-correlation-direction measurement on the ORIGINAL state.

    For the canonical state the measurement is along x; pulled back through
    the canonicalizing rotation it is the axis of u1^dag sigma_1 u1, i.e. the
    first row of o1.  The sign is fixed to the hemisphere representative
    (n and -n label the same measurement).
    """
    n = decomp.o1[0, :].copy()
    n /= np.linalg.norm(n)
    if n[0] < 0.0 or (n[0] == 0.0 and n[1] > 0.0) or (n[0] == 0.0 and n[1] == 0.0 and n[2] < 0.0):
        n = -n
    return n
