"""Experiment drivers.

Publication-style sweeps of the trade-off curves, randomized verification of
the two trade-off theorems and the basic properties, minimization of the
intermediate measurement, and randomized stress-testing of the d-dimensional
conjecture.  Every driver is a pure function of its seed and parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from . import bloch, linalg, metrics, structures
from .errors import UnsupportedSizeError, ValidationError
from .measurement import (
    OrthonormalBasis,
    computational_basis,
    haar_random_basis,
)
from .tolerances import ASSERTION_TOL

_MAX_SEARCH_DIM = 5


@dataclass(frozen=True)
class ScanTable:
    """Rectangular table of sweep results (one row per grid point)."""

    column_names: List[str]
    rows: np.ndarray


@dataclass(frozen=True)
class ConjectureRun:
    """Summary of a randomized conjecture stress test."""

    dim: int
    trials: int
    seed: int
    min_slack_sum: float
    min_slack_delta: float
    violations: List[dict]
    argmin_distance_to_a: float
    argmin_distance_to_b: float


@dataclass(frozen=True)
class TheoremTwoRun:
    dim: int
    trials: int
    seed: int
    floor: float
    min_sum: float
    sum_at_identity: float
    violations: List[dict]


@dataclass(frozen=True)
class MinimizeResult:
    best_basis: OrthonormalBasis
    min_sum: float
    min_delta: float
    distance_to_a: float
    distance_to_b: float


@dataclass(frozen=True)
class PropertyRun:
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _grid_with_zero(lo: float, hi: float, steps: int) -> np.ndarray:
    """Uniform grid snapped so the point nearest zero is exactly zero."""
    g = np.linspace(lo, hi, steps)
    if lo < 0.0 < hi or lo == 0.0 or hi == 0.0:
        g[np.argmin(np.abs(g))] = 0.0
    return g


def scan_theorem1(b_angle: float, steps: int, plane_only: bool = True) -> ScanTable:
    """Sweep the intermediate basis direction and record eps + eta and delta.

    a = z-axis, b at angle ``b_angle`` from a in the xz-plane.  The swept
    Bloch vector a' is rotated away from a by the grid angle: within
    Span{a, b} when ``plane_only``, within the plane spanned by a and the
    normal a x b otherwise.
    """
    if steps < 3:
        raise ValidationError(f"need at least 3 grid steps, got {steps}")
    a = np.array([0.0, 0.0, 1.0])
    b = np.array([math.sin(b_angle), 0.0, math.cos(b_angle)])
    in_plane = b - np.dot(a, b) * a
    if np.linalg.norm(in_plane) > 1e-12:
        e = in_plane / np.linalg.norm(in_plane)
    else:
        e = np.array([1.0, 0.0, 0.0])  # a and b parallel: any transverse axis
    if not plane_only:
        e = np.cross(a, e)
    angles = _grid_with_zero(-math.pi, math.pi, steps)
    rows = np.empty((steps, 3))
    for r, phi in enumerate(angles):
        ap = math.cos(phi) * a + math.sin(phi) * e
        eps = bloch.bloch_error(a, ap)
        eta = bloch.bloch_disturbance(ap, b)
        rows[r] = (phi, eps + eta, bloch.bloch_overall(a, ap, b))
    return ScanTable(column_names=["angle", "sum", "delta"], rows=rows)


def scan_bounds_d3(overlap1_sq: float, steps: int) -> ScanTable:
    """d = 3 sweep of the disturbance term against its two upper bounds.

    Fixes c1 = |<a'_1|b_i>|^2, sweeps c2 over the range compatible with the
    ordering c1 <= c2 <= c3 and normalization; each row holds the outcome-i
    disturbance value (before the max over i) and both bounds.
    """
    if steps < 3:
        raise ValidationError(f"need at least 3 grid steps, got {steps}")
    if not 0.0 <= overlap1_sq <= 1.0 / 3.0 + 1e-12:
        raise ValidationError(f"overlap1_sq must lie in [0, 1/3], got {overlap1_sq}")
    c1 = float(overlap1_sq)
    c2_grid = np.linspace(c1, (1.0 - c1) / 2.0, steps)
    rows = np.empty((steps, 4))
    for r, c2 in enumerate(c2_grid):
        c3 = 1.0 - c1 - c2
        c = np.array([c1, c2, c3])
        bi = np.sqrt(c)
        m = np.outer(bi, bi) - np.diag(c)
        eta_i = linalg.spectral_radius(m)
        bound1 = math.sqrt((2.0 / 3.0) * max(1.0 - np.sum(c**2), 0.0))
        root = np.sqrt(c)
        bound2 = float(np.max(root * (np.sum(root) - root)))
        rows[r] = (c2, eta_i, bound1, bound2)
    return ScanTable(column_names=["overlap2_sq", "eta", "bound1", "bound2"], rows=rows)


def verify_theorem2(d: int, trials: int, seed: int,
                    tol: float = ASSERTION_TOL) -> TheoremTwoRun:
    """MUB trade-off: eps + eta >= 1 - 1/d over Haar-random intermediates."""
    a = computational_basis(d)
    b = structures.fourier_basis(d)
    floor = 1.0 - 1.0 / d
    min_sum = np.inf
    violations: List[dict] = []
    for t in range(trials):
        ap = haar_random_basis(d, seed, t)
        total = metrics.error(a, ap).value + metrics.disturbance(ap, b).value
        min_sum = min(min_sum, total)
        if total < floor - tol:
            violations.append({"trial": t, "sum": total, "floor": floor})
    sum_at_identity = metrics.error(a, a).value + metrics.disturbance(a, b).value
    return TheoremTwoRun(dim=d, trials=trials, seed=seed, floor=floor,
                         min_sum=float(min_sum), sum_at_identity=sum_at_identity,
                         violations=violations)


# ---------------------------------------------------------------------------
# Local search over the intermediate measurement
# ---------------------------------------------------------------------------

def _unitary_moves(d: int, step: float) -> List[np.ndarray]:
    """Closed-form one-parameter unitaries: d phase and d(d-1) rotation moves."""
    moves = []
    for p in range(d):
        g = np.eye(d, dtype=np.complex128)
        g[p, p] = np.exp(1j * step)
        moves.append(g)
    c, s = math.cos(step), math.sin(step)
    for p in range(d - 1):
        for q in range(p + 1, d):
            g = np.eye(d, dtype=np.complex128)
            g[p, p] = g[q, q] = c
            g[p, q], g[q, p] = -s, s
            moves.append(g)
            g = np.eye(d, dtype=np.complex128)
            g[p, p] = g[q, q] = c
            g[p, q] = g[q, p] = 1j * s
            moves.append(g)
    return moves


def _local_search(a: OrthonormalBasis, b: OrthonormalBasis,
                  start: OrthonormalBasis, iters: int,
                  step_floor: float = 1e-8) -> Tuple[OrthonormalBasis, float]:
    def objective(vectors: np.ndarray) -> float:
        ap = OrthonormalBasis(vectors=vectors)
        return metrics.error(a, ap).value + metrics.disturbance(ap, b).value

    v = start.vectors.copy()
    best = objective(v)
    step = 0.2
    for _ in range(iters):
        improved = False
        for g in _unitary_moves(a.dim, step):
            for gg in (g, g.conj().T):
                cand = v @ gg
                val = objective(cand)
                if val < best - 1e-15:
                    v, best = cand, val
                    improved = True
        if not improved:
            step *= 0.5
            if step < step_floor:
                break
    return OrthonormalBasis(vectors=v), best


def minimize_over_intermediate(a: OrthonormalBasis, b: OrthonormalBasis,
                               restarts: int, seed: int,
                               iters: int = 200) -> MinimizeResult:
    """Random-restart geodesic search for the A' minimizing eps + eta.

    Restart 0 starts at A and restart 1 at B relabeled to best match A (the
    conjectured optima); the remaining restarts start from Haar-random bases.
    """
    if a.dim != b.dim:
        raise ValidationError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.dim > _MAX_SEARCH_DIM:
        raise UnsupportedSizeError(f"search supports d <= {_MAX_SEARCH_DIM}, got {a.dim}")
    if restarts < 1:
        raise ValidationError(f"need at least one restart, got {restarts}")
    perm = list(metrics.relaxed_error(a, b).permutation)
    b_relabeled = OrthonormalBasis(vectors=b.vectors[perm].copy())
    starts = [a, b_relabeled]
    for r in range(max(restarts - 2, 0)):
        starts.append(haar_random_basis(a.dim, seed, r))
    best_basis, best_val = None, np.inf
    for start in starts[:max(restarts, 2)]:
        basis, val = _local_search(a, b, start, iters)
        if val < best_val:
            best_basis, best_val = basis, val
    min_delta = metrics.overall_error(a, best_basis, b).value
    return MinimizeResult(
        best_basis=best_basis,
        min_sum=float(best_val),
        min_delta=min_delta,
        distance_to_a=metrics.relaxed_error(best_basis, a).value,
        distance_to_b=metrics.relaxed_error(best_basis, b).value,
    )


def conjecture_search(d: int, trials: int, seed: int,
                      tol: float = ASSERTION_TOL) -> ConjectureRun:
    """Randomized search for violations of eps + eta >= f and delta >= f."""
    if not 2 <= d <= _MAX_SEARCH_DIM:
        raise ValidationError(f"dimension must be in [2, {_MAX_SEARCH_DIM}], got {d}")
    min_slack_sum = np.inf
    min_slack_delta = np.inf
    violations: List[dict] = []
    dist_a = dist_b = 0.0
    for t in range(trials):
        a = haar_random_basis(d, seed, t, 0)
        ap = haar_random_basis(d, seed, t, 1)
        b = haar_random_basis(d, seed, t, 2)
        eps = metrics.error(a, ap).value
        eta = metrics.disturbance(ap, b).value
        delta = metrics.overall_error(a, ap, b).value
        floor = metrics.conjecture_floor(a, b)
        slack_sum = eps + eta - floor
        slack_delta = delta - floor
        if slack_sum < min_slack_sum:
            min_slack_sum = slack_sum
            dist_a = metrics.relaxed_error(ap, a).value
            dist_b = metrics.relaxed_error(ap, b).value
        min_slack_delta = min(min_slack_delta, slack_delta)
        if slack_sum < -tol or slack_delta < -tol:
            violations.append({
                "trial": t,
                "slack_sum": slack_sum,
                "slack_delta": slack_delta,
                "floor": floor,
                "a": a.vectors.tolist(),
                "aprime": ap.vectors.tolist(),
                "b": b.vectors.tolist(),
            })
    return ConjectureRun(dim=d, trials=trials, seed=seed,
                         min_slack_sum=float(min_slack_sum),
                         min_slack_delta=float(min_slack_delta),
                         violations=violations,
                         argmin_distance_to_a=dist_a,
                         argmin_distance_to_b=dist_b)


# ---------------------------------------------------------------------------
# Property verification over random instances
# ---------------------------------------------------------------------------

def verify_properties(dims=(2, 3, 4, 5), trials: int = 100, seed: int = 0,
                      tol: float = ASSERTION_TOL) -> PropertyRun:
    """Check Properties 1-4, reducibility and subsystems on random instances."""
    checks: List[Tuple[str, bool, str]] = []

    def record(name: str, worst: float, bound: float = 0.0) -> None:
        checks.append((name, bool(worst <= bound), f"worst slack {worst:.3e}"))

    for d in dims:
        worst_eps = worst_eta = worst_b1 = worst_b2 = -np.inf
        worst_geo = worst_cal = worst_pf_entry = worst_pf_eig = -np.inf
        for t in range(trials):
            ap = haar_random_basis(d, seed, d, t, 0)
            b = haar_random_basis(d, seed, d, t, 1)
            eps = metrics.error(ap, b).value
            eta_witness = metrics.disturbance(ap, b)
            eta = eta_witness.value
            worst_eps = max(worst_eps, eps - 1.0)
            worst_eta = max(worst_eta, eta - (1.0 - 1.0 / d))
            worst_b1 = max(worst_b1, eta - metrics.disturbance_bound_1(ap, b))
            worst_b2 = max(worst_b2, eta - metrics.disturbance_bound_2(ap, b))
            geo = math.sqrt((1.0 - 1.0 / d) * metrics.calibration_disturbance(ap, b))
            worst_geo = max(worst_geo, eta - geo)
            worst_cal = max(worst_cal, abs(eps - math.sqrt(metrics.calibration_error(ap, b))))
            i = eta_witness.index
            frame = metrics.disturbance_matrix_in_frame(ap, b, i)
            worst_pf_entry = max(worst_pf_entry, float(-np.min(frame)))
            top = linalg.eigvals_hermitian(frame)[-1]
            r = linalg.spectral_radius(metrics.disturbance_matrix(ap, b, i))
            worst_pf_eig = max(worst_pf_eig, abs(top - r))
        record(f"property1_error_bound_d{d}", worst_eps, 1e-12)
        record(f"property1_disturbance_bound_d{d}", worst_eta, tol)
        record(f"property4_bound1_d{d}", worst_b1, tol)
        record(f"property4_bound2_d{d}", worst_b2, tol)
        record(f"property4_geometric_mean_d{d}", worst_geo, tol)
        record(f"calibration_error_identity_d{d}", worst_cal, tol)
        record(f"perron_frobenius_entries_d{d}", worst_pf_entry, 1e-12)
        record(f"perron_frobenius_top_eigenvalue_d{d}", worst_pf_eig, 1e-10)

    # Property 1 equality witnesses.
    comp = computational_basis(2)
    flipped = OrthonormalBasis(vectors=comp.vectors[::-1].copy())
    checks.append(("property1_error_equality",
                   bool(abs(metrics.error(comp, flipped).value - 1.0) <= tol),
                   "orthogonal vector pair"))
    for d in dims:
        a = computational_basis(d)
        f = structures.fourier_basis(d)
        ok = bool(abs(metrics.disturbance(a, f).value - (1.0 - 1.0 / d)) <= tol)
        checks.append((f"property1_disturbance_equality_d{d}", ok, "unbiased basis pair"))

    # Property 2: direct sums take the max over blocks.
    worst = -np.inf
    for t in range(trials):
        blocks = [tuple(haar_random_basis(2, seed, 100 + t, k, w) for w in range(3))
                  for k in range(2)]
        asm = structures.direct_sum(blocks)
        block_eps = max(metrics.error(bl[0], bl[1]).value for bl in blocks)
        block_eta = max(metrics.disturbance(bl[1], bl[2]).value for bl in blocks)
        worst = max(worst,
                    abs(metrics.error(asm[0], asm[1]).value - block_eps),
                    abs(metrics.disturbance(asm[1], asm[2]).value - block_eta))
    record("property2_reducibility", worst, 1e-12)

    # Property 3: tensor products dominate each factor.
    worst = -np.inf
    for t in range(trials):
        factors = [tuple(haar_random_basis(2, seed, 200 + t, k, w) for w in range(3))
                   for k in range(2)]
        asm = structures.tensor_product(factors)
        f_eps = max(metrics.error(fa[0], fa[1]).value for fa in factors)
        f_eta = max(metrics.disturbance(fa[1], fa[2]).value for fa in factors)
        worst = max(worst,
                    f_eps - metrics.error(asm[0], asm[1]).value,
                    f_eta - metrics.disturbance(asm[1], asm[2]).value)
    record("property3_subsystems", worst, tol)

    return PropertyRun(checks=checks)
