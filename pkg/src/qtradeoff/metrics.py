"""State-independent error, disturbance and overall error.

The state-independent quantities are maxima over input states and reduce to
spectral radii of small Hermitian matrices, one per outcome label:

* error:        eps = max_i R(|a_i><a_i| - |a'_i><a'_i|)
                    = max_i sqrt(1 - |<a'_i|a_i>|^2)
* disturbance:  eta = max_i R(|b_i><b_i| - sum_k |<b_i|a'_k>|^2 |a'_k><a'_k|)
* overall:      delta = max over (i, j, sign) of R(error term +/- disturbance term)

Calibration variants, the two disturbance upper bounds, the relaxed
(label-free) error and the conjectured floor f = min(relaxed eps, eta) are
also provided.  Argmax ties always go to the lowest outcome index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import UnsupportedSizeError, ValidationError
from .measurement import (
    DensityMatrix,
    OrthonormalBasis,
    born_probabilities,
    infinity_distance,
    post_measurement_state,
)

# Exhaustive permutation enumeration in relaxed_error stays cheap up to here.
_MAX_RELAXED_DIM = 8


class WitnessValue(NamedTuple):
    value: float
    index: int


class OverallError(NamedTuple):
    value: float
    error_index: int
    disturbance_index: int
    sign: int


class RelaxedError(NamedTuple):
    value: float
    permutation: tuple


def _require_same_dim(x, y) -> None:
    if x.dim != y.dim:
        raise ValidationError(f"dimension mismatch: {x.dim} vs {y.dim}")


# ---------------------------------------------------------------------------
# State-dependent quantities
# ---------------------------------------------------------------------------

def state_dependent_error(a: OrthonormalBasis, ap: OrthonormalBasis,
                          rho: DensityMatrix) -> float:
    """Infinity distance between the outcome distributions of A and A' on rho."""
    _require_same_dim(a, ap)
    return infinity_distance(born_probabilities(a, rho), born_probabilities(ap, rho))


def state_dependent_disturbance(ap: OrthonormalBasis, b: OrthonormalBasis,
                                rho: DensityMatrix) -> float:
    """Change in the B statistics caused by measuring A' first."""
    _require_same_dim(ap, b)
    return infinity_distance(
        born_probabilities(b, rho),
        born_probabilities(b, post_measurement_state(ap, rho)),
    )


# ---------------------------------------------------------------------------
# State-independent quantities
# ---------------------------------------------------------------------------

def error_matrix(a: OrthonormalBasis, ap: OrthonormalBasis, i: int) -> np.ndarray:
    """|a_i><a_i| - |a'_i><a'_i|."""
    return a.projector(i) - ap.projector(i)


def disturbance_matrix(ap: OrthonormalBasis, b: OrthonormalBasis, i: int) -> np.ndarray:
    """|b_i><b_i| - sum_k |<b_i|a'_k>|^2 |a'_k><a'_k|."""
    bi = b.vectors[i]
    w = np.abs(ap.vectors.conj() @ bi) ** 2
    return np.outer(bi, bi.conj()) - (ap.vectors.T * w) @ ap.vectors.conj()


def error(a: OrthonormalBasis, ap: OrthonormalBasis) -> WitnessValue:
    """eps = max_i sqrt(1 - |<a'_i|a_i>|^2) with the maximizing outcome.

    Evaluated as the norm of a'_i minus its projection onto a_i, which stays
    accurate when the two bases nearly coincide (no cancellation in 1 - |o|^2).
    """
    _require_same_dim(a, ap)
    overlaps = np.einsum("ij,ij->i", a.vectors.conj(), ap.vectors)
    residual = ap.vectors - overlaps[:, None] * a.vectors
    vals = np.minimum(np.linalg.norm(residual, axis=1), 1.0)
    i = int(np.argmax(vals))
    return WitnessValue(float(vals[i]), i)


def disturbance(ap: OrthonormalBasis, b: OrthonormalBasis) -> WitnessValue:
    """eta = max_i R(disturbance_matrix(ap, b, i)) with the maximizing outcome."""
    _require_same_dim(ap, b)
    best, best_i = -1.0, 0
    for i in range(b.dim):
        r = linalg.spectral_radius(disturbance_matrix(ap, b, i))
        if r > best:
            best, best_i = r, i
    return WitnessValue(best, best_i)


def overall_error(a: OrthonormalBasis, ap: OrthonormalBasis,
                  b: OrthonormalBasis) -> OverallError:
    """delta = max over outcome pairs and relative sign of one spectral radius."""
    _require_same_dim(a, ap)
    _require_same_dim(ap, b)
    d = a.dim
    err_terms = [error_matrix(a, ap, i) for i in range(d)]
    dist_terms = [disturbance_matrix(ap, b, j) for j in range(d)]
    best = OverallError(-1.0, 0, 0, +1)
    for i in range(d):
        for j in range(d):
            for sign in (+1, -1):
                r = linalg.spectral_radius(err_terms[i] + sign * dist_terms[j])
                if r > best.value:
                    best = OverallError(r, i, j, sign)
    return best


def rephase_against(target: np.ndarray, basis: OrthonormalBasis) -> OrthonormalBasis:
    """Multiply each basis vector by a unit phase making <target|v_k> real >= 0.

    Zero overlaps are left untouched.  Spectral radii built from the basis
    projectors are unchanged by this.
    """
    target = np.asarray(target, dtype=np.complex128)
    o = basis.vectors @ target.conj()  # o_k = <target|v_k>
    mag = np.abs(o)
    phases = np.where(mag > 0, np.conj(o) / np.where(mag > 0, mag, 1.0), 1.0)
    return OrthonormalBasis(vectors=basis.vectors * phases[:, None])


def disturbance_matrix_in_frame(ap: OrthonormalBasis, b: OrthonormalBasis,
                                i: int) -> np.ndarray:
    """Disturbance matrix for outcome i expressed in the rephased A' frame.

    After rephasing the entries are <a'_j|M|a'_k> = c_j c_k - delta_jk c_k^2
    with c_k = <a'_k|b_i> >= 0, an entrywise non-negative matrix.
    """
    rp = rephase_against(b.vectors[i], ap)
    o = rp.vectors.conj() @ b.vectors[i]  # <a'_k|b_i>, real >= 0 after rephasing
    return np.real(np.outer(o, o.conj()) - np.diag(np.abs(o) ** 2))


def calibration_error(a: OrthonormalBasis, ap: OrthonormalBasis) -> float:
    """eps^c = max_i (1 - |<a'_i|a_i>|^2); satisfies eps = sqrt(eps^c)."""
    _require_same_dim(a, ap)
    overlaps = np.einsum("ij,ij->i", a.vectors.conj(), ap.vectors)
    residual = ap.vectors - overlaps[:, None] * a.vectors
    return float(np.max(np.minimum(np.sum(np.abs(residual) ** 2, axis=1), 1.0)))


def calibration_disturbance(ap: OrthonormalBasis, b: OrthonormalBasis) -> float:
    """eta^c = max_i (1 - sum_k |<a'_k|b_i>|^4)."""
    _require_same_dim(ap, b)
    w = np.abs(b.gram(ap)) ** 2  # w[i, k] = |<b_i|a'_k>|^2
    return float(np.max(1.0 - np.sum(w**2, axis=1)))


def disturbance_bound_1(ap: OrthonormalBasis, b: OrthonormalBasis) -> float:
    """max_i sqrt((1 - 1/d)(1 - sum_k |<a'_k|b_i>|^4))."""
    _require_same_dim(ap, b)
    d = ap.dim
    w = np.abs(b.gram(ap)) ** 2
    return float(np.max(np.sqrt((1.0 - 1.0 / d) * np.clip(1.0 - np.sum(w**2, axis=1), 0.0, None))))


def disturbance_bound_2(ap: OrthonormalBasis, b: OrthonormalBasis) -> float:
    """max_{i,j} |<a'_j|b_i>| sum_{k != j} |<a'_k|b_i>| (Frobenius column bound)."""
    _require_same_dim(ap, b)
    m = np.abs(b.gram(ap))  # m[i, j] = |<b_i|a'_j>|
    row_sums = np.sum(m, axis=1)
    return float(np.max(m * (row_sums[:, None] - m)))


def relaxed_error(a: OrthonormalBasis, b: OrthonormalBasis) -> RelaxedError:
    """Error minimized over relabelings of the second measurement's outcomes.

    Exhaustive over permutations; a bottleneck-assignment solver would scale
    further but is unnecessary at desk scale.
    """
    _require_same_dim(a, b)
    d = a.dim
    if d > _MAX_RELAXED_DIM:
        raise UnsupportedSizeError(
            f"relaxed error enumerates permutations; d = {d} exceeds {_MAX_RELAXED_DIM}"
        )
    # sin2[i, j] = 1 - |<b_j|a_i>|^2 via the orthogonal residual (accurate
    # when a_i and b_j nearly coincide).
    o = b.vectors.conj() @ a.vectors.T  # o[j, i] = <b_j|a_i>
    resid = a.vectors[None, :, :] - o[:, :, None] * b.vectors[:, None, :]
    sin2 = np.sum(np.abs(resid) ** 2, axis=2).T  # [i, j]
    idx = np.arange(d)
    best_val, best_perm = np.inf, tuple(idx)
    for perm in itertools.permutations(range(d)):
        worst = float(np.max(sin2[idx, perm]))
        if worst < best_val:
            best_val, best_perm = worst, perm
    return RelaxedError(float(np.sqrt(max(best_val, 0.0))), best_perm)


def conjecture_floor(a: OrthonormalBasis, b: OrthonormalBasis) -> float:
    """f(A, B) = min(relaxed error, disturbance)."""
    return min(relaxed_error(a, b).value, disturbance(a, b).value)


# ---------------------------------------------------------------------------
# Bundled report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TradeoffReport:
    """All trade-off quantities for one (A, A', B) triple.

    ``witness_state`` is the unit eigenvector achieving the spectral radius
    that wins the overall-error maximization.
    """

    epsilon: float
    eta: float
    delta: float
    epsilon_cal: float
    eta_cal: float
    bound1: float
    bound2: float
    witness_error_index: int
    witness_disturbance_index: int
    witness_sign: int
    witness_state: np.ndarray


def tradeoff_report(a: OrthonormalBasis, ap: OrthonormalBasis,
                    b: OrthonormalBasis) -> TradeoffReport:
    eps = error(a, ap)
    eta = disturbance(ap, b)
    delta = overall_error(a, ap, b)
    winning = (error_matrix(a, ap, delta.error_index)
               + delta.sign * disturbance_matrix(ap, b, delta.disturbance_index))
    eig = linalg.eig_hermitian(winning)
    k = int(np.argmax(np.abs(eig.eigenvalues)))
    return TradeoffReport(
        epsilon=eps.value,
        eta=eta.value,
        delta=delta.value,
        epsilon_cal=calibration_error(a, ap),
        eta_cal=calibration_disturbance(ap, b),
        bound1=disturbance_bound_1(ap, b),
        bound2=disturbance_bound_2(ap, b),
        witness_error_index=delta.error_index,
        witness_disturbance_index=delta.disturbance_index,
        witness_sign=delta.sign,
        witness_state=eig.eigenvectors[:, k].copy(),
    )
