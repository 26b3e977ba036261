"""Dense complex linear algebra for small dimensions (d <= 16).

Provides a cyclic Jacobi eigensolver for Hermitian matrices, the spectral
radius built on top of it, and exact Haar-random unitary sampling via the
Ginibre + QR construction.  Everything is deterministic given explicit seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .tolerances import VALIDATION_TOL

# Off-diagonal Frobenius norm below which a Jacobi sweep is considered
# converged; 100 sweeps is far more than d <= 16 ever needs.
_JACOBI_OFF_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 100


def rng_from(seed: int, *stream: int) -> np.random.Generator:
    """Reproducible 64-bit generator (PCG64) for (seed, sub-stream) pairs.

    Sub-stream indices let independent trials derive their own generators
    from one master seed, so results do not depend on evaluation order.
    """
    return np.random.default_rng([int(seed), *[int(s) for s in stream]])


def check_hermitian(m: np.ndarray, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate hermiticity of ``m`` and return its symmetrized copy.

    Raises
    ------
    ValidationError
        If some entry of ``m - m^dagger`` exceeds ``tol`` in modulus; the
        message names the offending entry.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m - m.conj().T)
    i, j = np.unravel_index(np.argmax(dev), dev.shape)
    if dev[i, j] > tol:
        raise ValidationError(
            f"matrix is not Hermitian: |m[{i},{j}] - conj(m[{j},{i}])| = {dev[i, j]:.3e}"
        )
    return 0.5 * (m + m.conj().T)


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are sorted ascending; column ``k`` of ``eigenvectors`` is
    the unit eigenvector for ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _jacobi(a: np.ndarray, want_vectors: bool):
    """Cyclic complex Jacobi rotations; ``a`` is consumed (modified in place)."""
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128) if want_vectors else None
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = a.copy()
        np.fill_diagonal(off, 0.0)
        if np.linalg.norm(off) < _JACOBI_OFF_TOL:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                beta = abs(apq)
                if beta < 1e-30:
                    continue
                phase = apq / beta
                theta = 0.5 * math.atan2(2.0 * beta, a[p, p].real - a[q, q].real)
                c = math.cos(theta)
                s = math.sin(theta)
                # J has columns p,q = (c, s*conj(phase)) and (-s*phase, c);
                # apply a <- J^dagger a J, v <- v J.
                row_p = c * a[p, :] + s * phase * a[q, :]
                row_q = -s * np.conj(phase) * a[p, :] + c * a[q, :]
                a[p, :] = row_p
                a[q, :] = row_q
                col_p = c * a[:, p] + s * np.conj(phase) * a[:, q]
                col_q = -s * phase * a[:, p] + c * a[:, q]
                a[:, p] = col_p
                a[:, q] = col_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    vcol_p = c * v[:, p] + s * np.conj(phase) * v[:, q]
                    vcol_q = -s * phase * v[:, p] + c * v[:, q]
                    v[:, p] = vcol_p
                    v[:, q] = vcol_q
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    if want_vectors:
        return w[order], v[:, order]
    return w[order], None


def eig_hermitian(m: np.ndarray, tol: float = VALIDATION_TOL) -> HermitianEigen:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi."""
    h = check_hermitian(m, tol)
    w, v = _jacobi(h, want_vectors=True)
    return HermitianEigen(eigenvalues=w, eigenvectors=v)


def eigvals_hermitian(m: np.ndarray, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Eigenvalues only (ascending); skips the eigenvector accumulation."""
    h = check_hermitian(m, tol)
    w, _ = _jacobi(h, want_vectors=False)
    return w


def spectral_radius(m: np.ndarray, tol: float = VALIDATION_TOL) -> float:
    """max_k |lambda_k| of a Hermitian matrix."""
    w = eigvals_hermitian(m, tol)
    return float(np.max(np.abs(w))) if w.size else 0.0


def haar_unitary(dim: int, seed: int, *stream: int) -> np.ndarray:
    """Haar-distributed unitary via complex Ginibre + QR with phase fix.

    The diagonal of R is rotated to be real positive, which makes the QR map
    well defined and the resulting Q exactly Haar distributed.
    """
    if dim < 2:
        raise ValidationError(f"dimension must be >= 2, got {dim}")
    rng = rng_from(seed, *stream)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def haar_unit_vector(dim: int, seed: int, *stream: int) -> np.ndarray:
    """Haar-random unit vector (the first column of a Haar unitary in law)."""
    if dim < 2:
        raise ValidationError(f"dimension must be >= 2, got {dim}")
    rng = rng_from(seed, *stream)
    g = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return g / np.linalg.norm(g)
