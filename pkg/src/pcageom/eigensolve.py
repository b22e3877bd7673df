"""Symmetric eigendecomposition with deterministic output conventions.

The solver is a cyclic Jacobi iteration: full sweeps over the strict
upper triangle, each pair annihilated by a plane rotation, until the
off-diagonal Frobenius norm falls below 1e-12 times the Frobenius norm
of the input (at most 100 sweeps).  Jacobi is chosen over faster
tridiagonalization methods because every step is an explicit rotation,
which keeps the accumulated eigenvector basis orthogonal to machine
precision and makes the run fully reproducible.

Raw eigensolvers leave eigenvalue order and eigenvector signs
arbitrary.  Three conventions pin them down here:

* eigenvalues are sorted in descending order;
* within a tie group (eigenvalues within 1e-10 of the group's first
  member) vectors are ordered by the index of their largest-magnitude
  component, ascending, so an identity input yields the identity basis;
* each eigenvector is scaled so its first component larger than 1e-9
  in magnitude is positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corrstats import CorrelationMatrix
from .errors import ConvergenceError, DataError
from .kernels import jacobi_sweeps

__all__ = ["EigenSystem", "jacobi_eigh", "eigen_symmetric", "rotation_from_eigenvectors"]

OFF_TOL_FACTOR = 1e-12
MAX_SWEEPS = 100
TIE_TOL = 1e-10
SIGN_TOL = 1e-9
PSD_CLAMP = -1e-10


@dataclass(eq=False)
class EigenSystem:
    """Eigendecomposition of a correlation matrix, C = U diag(w) U^T.

    ``U`` holds eigenvectors in its columns; ``R = U^T`` is the rotation
    into the component basis; ``C_prime = R C R^T`` is the diagonal
    eigenvalue matrix, stored densely.
    """

    eigenvalues: np.ndarray
    U: np.ndarray
    R: np.ndarray
    C_prime: np.ndarray
    sweeps: int

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def _apply_conventions(w: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-w, kind="stable")
    w = w[order]
    u = u[:, order]

    n = w.shape[0]
    i = 0
    while i < n:
        j = i + 1
        while j < n and w[i] - w[j] <= TIE_TOL:
            j += 1
        if j - i > 1:
            keys = [int(np.argmax(np.abs(u[:, k]))) for k in range(i, j)]
            sub = sorted(range(j - i), key=lambda t: (keys[t], t))
            u[:, i:j] = u[:, [i + t for t in sub]]
            w[i:j] = w[[i + t for t in sub]]
        i = j

    for k in range(n):
        col = u[:, k]
        big = np.nonzero(np.abs(col) > SIGN_TOL)[0]
        if big.size and col[big[0]] < 0.0:
            u[:, k] = -col
    return w, u


def jacobi_eigh(a: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray, int]:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Returns ``(w, U, sweeps)`` with eigenvalues descending and the
    output conventions above applied.  Raises ConvergenceError if the
    off-diagonal norm is still above threshold after ``max_sweeps``.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"eigensolve: matrix must be square, got {a.shape}")
    if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, float(np.max(np.abs(a)))):
        raise ValueError("eigensolve: matrix is not symmetric")

    work = 0.5 * (a + a.T)
    target = OFF_TOL_FACTOR * float(np.linalg.norm(work, "fro"))
    v = np.eye(a.shape[0])
    sweeps, off = jacobi_sweeps(work, v, target, max_sweeps)
    if off > target:
        raise ConvergenceError(
            f"eigensolve: Jacobi did not converge in {max_sweeps} sweeps "
            f"(off-diagonal norm {off:.3e}, target {target:.3e})"
        )
    w, u = _apply_conventions(np.diag(work).copy(), v)
    return w, u, sweeps


def rotation_from_eigenvectors(u: np.ndarray) -> np.ndarray:
    """Rotation matrix R = U^T from an orthonormal eigenvector basis.

    R carries coordinates from the standard base to the eigenvector
    base: its rows are the eigenvectors.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"eigensolve: eigenvector matrix must be square, got {u.shape}")
    gram_dev = float(np.max(np.abs(u.T @ u - np.eye(u.shape[0]))))
    if gram_dev > 1e-8:
        raise ValueError(
            f"eigensolve: columns are not orthonormal (max Gram deviation {gram_dev:.3e})"
        )
    return u.T.copy()


def eigen_symmetric(c: CorrelationMatrix) -> EigenSystem:
    """Eigendecomposition of a correlation matrix.

    Correlation matrices are positive semidefinite in exact arithmetic,
    so eigenvalues in [-1e-10, 0) are treated as rounding noise and
    clamped to zero; anything more negative means the input was not a
    correlation matrix and raises DataError.
    """
    w, u, sweeps = jacobi_eigh(c.r)
    if float(w[-1]) < PSD_CLAMP:
        raise DataError(
            f"eigensolve: eigenvalue {float(w[-1]):.3e} is negative beyond rounding; "
            "input is not a valid correlation matrix"
        )
    w = np.where((w < 0.0) & (w >= PSD_CLAMP), 0.0, w)
    return EigenSystem(
        eigenvalues=w,
        U=u,
        R=u.T.copy(),
        C_prime=np.diag(w),
        sweeps=sweeps,
    )
