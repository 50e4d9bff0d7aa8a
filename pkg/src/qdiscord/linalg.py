"""Dense complex linear algebra for one- and two-qubit operators.

Pauli constants, Hermitian eigensolving, entropies in bits, partial traces,
and the SO(3) -> SU(2) lift used by the canonical-form machinery.  All
functions are pure and safe for concurrent use.
"""

from __future__ import annotations

import numpy as np

from .errors import NotAStateError, ValidationError

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)
for _p in PAULIS:
    _p.setflags(write=False)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
# eigenvalues in [-EIGENVALUE_FLOOR, 0) are treated as rounding noise and clamped to 0
EIGENVALUE_FLOOR = 1e-10


def require_hermitian(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return ``matrix`` as a complex ndarray, checking shape and hermiticity."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise ValidationError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValidationError("matrix is not Hermitian within tolerance")
    return m


def eigvals_hermitian(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian 2x2 or 4x4 matrix."""
    return np.linalg.eigvalsh(require_hermitian(matrix, tol))


def validate_density_matrix(rho, *, eig_floor: float = EIGENVALUE_FLOOR,
                            trace_tol: float = TRACE_TOL) -> np.ndarray:
    """Check unit trace and positivity; return the state as a complex ndarray.

    Eigenvalues in ``[-eig_floor, 0)`` are accepted as arithmetic noise;
    anything lower raises :class:`NotAStateError`.
    """
    rho = require_hermitian(rho)
    if abs(np.trace(rho).real - 1.0) > trace_tol:
        raise NotAStateError(f"trace is {float(np.trace(rho).real)!r}, expected 1")
    smallest = np.linalg.eigvalsh(rho)[0]
    if smallest < -eig_floor:
        raise NotAStateError(f"negative eigenvalue {float(smallest)!r}")
    return rho


def _entropy_bits(eigenvalues: np.ndarray) -> float:
    w = eigenvalues[eigenvalues > 0.0]
    if w.size == 0:
        return 0.0
    return float(-(w * np.log2(w)).sum())


def von_neumann_entropy(rho, *, eig_floor: float = EIGENVALUE_FLOOR) -> float:
    """Entropy -Tr[rho log2 rho] in bits, with 0*log(0) taken as 0."""
    w = eigvals_hermitian(rho)
    if w[0] < -eig_floor:
        raise NotAStateError(f"negative eigenvalue {float(w[0])!r}")
    if abs(w.sum() - 1.0) > 1e-9:
        raise NotAStateError(f"trace is {float(w.sum())!r}, expected 1")
    return _entropy_bits(np.clip(w, 0.0, None))


def partial_trace(rho, keep: str) -> np.ndarray:
    """Trace out one qubit of a two-qubit operator.

    Parameters
    ----------
    rho : (4, 4) array_like
        Operator on the composite space, basis ordered |00>,|01>,|10>,|11>.
    keep : {"A", "B"}
        Which subsystem the result lives on.

    The map is linear and accepts any (not necessarily positive) operator.
    """
    m = np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {m.shape}")
    r = m.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("abcb->ac", r)
    if keep == "B":
        return np.einsum("abad->bd", r)
    raise ValidationError(f"keep must be 'A' or 'B', got {keep!r}")


def binary_entropy(x: float) -> float:
    """Entropy in bits of the eigenvalue pair ((1+x)/2, (1-x)/2).

    Even in ``x``; equals 1 at x=0 and 0 at x=+-1.  Inputs beyond
    |x| = 1 + 1e-12 signal a broken upstream norm computation and raise.
    """
    x = float(x)
    if abs(x) > 1.0 + 1e-12:
        raise ValidationError(f"binary_entropy argument {x!r} outside [-1, 1]")
    x = min(1.0, max(-1.0, x))
    return _entropy_bits(np.array([(1.0 + x) / 2.0, (1.0 - x) / 2.0]))


def require_rotation(matrix, tol: float = 1e-12) -> np.ndarray:
    """Return ``matrix`` as a real 3x3 ndarray, checking orthogonality."""
    o = np.asarray(matrix, dtype=float)
    if o.shape != (3, 3):
        raise ValidationError(f"expected a 3x3 matrix, got shape {o.shape}")
    if np.max(np.abs(o.T @ o - np.eye(3))) > tol:
        raise ValidationError("matrix is not orthogonal within tolerance")
    return o


def su2_from_so3(rotation, tol: float = 1e-12) -> np.ndarray:
    """Lift a proper rotation O to the 2x2 unitary U with U^dag sigma_i U = sum_j O_ij sigma_j.

    The lift is defined up to a global sign; the representative returned is
    the one produced by the largest-pivot quaternion extraction, which keeps
    the computation well conditioned for every input.  Reflections
    (det O = -1) are rejected: they have no SU(2) counterpart.
    """
    o = require_rotation(rotation, tol)
    if np.linalg.det(o) < 0.0:
        raise ValidationError("det = -1: reflections have no SU(2) lift")

    t = o[0, 0] + o[1, 1] + o[2, 2]
    pivots = (t, o[0, 0], o[1, 1], o[2, 2])
    branch = int(np.argmax(pivots))
    if branch == 0:
        r = np.sqrt(1.0 + t)
        w = 0.5 * r
        x = (o[2, 1] - o[1, 2]) / (2.0 * r)
        y = (o[0, 2] - o[2, 0]) / (2.0 * r)
        z = (o[1, 0] - o[0, 1]) / (2.0 * r)
    elif branch == 1:
        r = np.sqrt(1.0 + o[0, 0] - o[1, 1] - o[2, 2])
        x = 0.5 * r
        w = (o[2, 1] - o[1, 2]) / (2.0 * r)
        y = (o[0, 1] + o[1, 0]) / (2.0 * r)
        z = (o[0, 2] + o[2, 0]) / (2.0 * r)
    elif branch == 2:
        r = np.sqrt(1.0 - o[0, 0] + o[1, 1] - o[2, 2])
        y = 0.5 * r
        w = (o[0, 2] - o[2, 0]) / (2.0 * r)
        x = (o[0, 1] + o[1, 0]) / (2.0 * r)
        z = (o[1, 2] + o[2, 1]) / (2.0 * r)
    else:
        r = np.sqrt(1.0 - o[0, 0] - o[1, 1] + o[2, 2])
        z = 0.5 * r
        w = (o[1, 0] - o[0, 1]) / (2.0 * r)
        x = (o[0, 2] + o[2, 0]) / (2.0 * r)
        y = (o[1, 2] + o[2, 1]) / (2.0 * r)

    q = np.array([w, x, y, z])
    q /= np.linalg.norm(q)
    return q[0] * SIGMA_0 - 1j * (q[1] * SIGMA_X + q[2] * SIGMA_Y + q[3] * SIGMA_Z)
