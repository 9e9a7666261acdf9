"""One-dimensional orderings of a distance matrix.

Circular orderings fit angles to the distances by minimizing the angular
stress

    L(theta) = 1/2 * sum_{i,j} (D_ij - (1 - cos(theta_i - theta_j)))**2

with per-node stochastic sweeps. Linear orderings use a one-dimensional
classical MDS of geodesic distances (ISOMAP).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import DegenerateSpectrumError, DimensionMismatchError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SgdParams:
    eta: float = 1.0
    epochs: int = 1000
    seed: int = 42
    restarts: int = 5
    tolerance: float = 1e-9
    window: int = 10

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")


@dataclass(frozen=True)
class RestartResult:
    seed: int
    initial_stress: float
    final_stress: float
    epochs_run: int


@dataclass(frozen=True)
class AngularEmbedding:
    theta: np.ndarray
    final_stress: float
    restarts: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class LinearOrdering:
    permutation: np.ndarray
    coordinate: np.ndarray
    eigenvalue: float = 0.0


def angular_distance(theta_i, theta_j):
    """Embedded distance ``1 - cos(theta_i - theta_j)``, in [0, 2]."""
    return 1.0 - np.cos(np.subtract(theta_i, theta_j))


def _check(theta, d):
    theta = np.asarray(theta, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    if theta.ndim != 1 or d.shape != (theta.size, theta.size):
        raise DimensionMismatchError(
            f"{theta.size} angles do not match distance matrix of shape {d.shape}"
        )
    return theta, d


def stress(theta, d) -> float:
    """Angular stress of ``theta`` against distance matrix ``d``, summed over ordered pairs."""
    theta, d = _check(theta, d)
    resid = d - angular_distance(theta[:, None], theta[None, :])
    return 0.5 * float(np.sum(resid * resid))


def stress_gradient(theta, d) -> np.ndarray:
    """Partial derivatives of :func:`stress` with respect to each angle.

    For symmetric ``d`` this is ``-2 * sum_j (D_ij - d_ij) sin(theta_i - theta_j)``;
    the asymmetric form below is exact for any square ``d``.
    """
    theta, d = _check(theta, d)
    diff = theta[:, None] - theta[None, :]
    resid = d - (1.0 - np.cos(diff))
    sin = np.sin(diff)
    return -np.sum(resid * sin, axis=1) - np.sum(resid.T * sin, axis=1)


@numba.njit(cache=True)
def _stress_kernel(cos_t, sin_t, d):
    n = cos_t.size
    total = 0.0
    for i in range(n):
        for j in range(n):
            r = d[i, j] - 1.0 + cos_t[i] * cos_t[j] + sin_t[i] * sin_t[j]
            total += r * r
    return 0.5 * total


@numba.njit(cache=True)
def _sweep(theta, cos_t, sin_t, d, order, eta):
    # theta_i += eta/N * sum_j (D_ij - d_ij) sin(theta_i - theta_j), node by node
    n = theta.size
    rate = eta / n
    for idx in range(n):
        i = order[idx]
        ci = cos_t[i]
        si = sin_t[i]
        step = 0.0
        for j in range(n):
            c = ci * cos_t[j] + si * sin_t[j]
            s = si * cos_t[j] - ci * sin_t[j]
            step += (d[i, j] - 1.0 + c) * s
        t = theta[i] + rate * step
        theta[i] = t
        cos_t[i] = np.cos(t)
        sin_t[i] = np.sin(t)


def sweep_reference(theta, d, order, eta):
    """Plain-Python version of one sweep, kept as a cross-check for the compiled kernel."""
    theta = np.array(theta, dtype=np.float64)
    for i in order:
        step = sum(
            (d[i, j] - (1.0 - np.cos(theta[i] - theta[j]))) * np.sin(theta[i] - theta[j])
            for j in range(theta.size)
        )
        theta[i] += eta / theta.size * step
    return theta


def _wrap(theta):
    out = np.mod(theta, TWO_PI)
    # mod can round up to exactly 2*pi for tiny negative inputs
    out[out >= TWO_PI] = 0.0
    return out


def _fit_once(d, params: SgdParams, seed: int):
    rng = np.random.default_rng(seed)
    n = d.shape[0]
    theta = rng.uniform(0.0, TWO_PI, n)
    initial = _stress_kernel(np.cos(theta), np.sin(theta), d)
    best_theta, best = theta.copy(), initial
    history = [initial]
    epochs_run = 0
    for epoch in range(params.epochs):
        order = rng.permutation(n)
        cos_t, sin_t = np.cos(theta), np.sin(theta)
        _sweep(theta, cos_t, sin_t, d, order, params.eta)
        theta = _wrap(theta)
        current = _stress_kernel(np.cos(theta), np.sin(theta), d)
        history.append(current)
        epochs_run = epoch + 1
        if current < best:
            best_theta, best = theta.copy(), current
        if current == 0.0:
            break
        if len(history) > params.window:
            past = history[-1 - params.window]
            if past > 0 and (past - current) / past < params.tolerance:
                break
    return best_theta, best, RestartResult(seed, initial, best, epochs_run)


def optimize_angles(d, params: SgdParams = SgdParams()) -> AngularEmbedding:
    """Fit angles to ``d`` by stochastic per-node sweeps over several restarts.

    Restart ``r`` is seeded with ``params.seed + r``; the restart with the
    lowest stress wins (earliest on ties). Within a restart the lowest-stress
    iterate is kept, so no restart ends above its starting stress.
    """
    d = np.ascontiguousarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise DimensionMismatchError(f"distance matrix must be square, got shape {d.shape}")
    if d.shape[0] < 2:
        raise DimensionMismatchError("need at least two points to embed")

    best = None
    results = []
    for r in range(params.restarts):
        theta, value, info = _fit_once(d, params, params.seed + r)
        results.append(info)
        if best is None or value < best[1]:
            best = (theta, value)
    theta = best[0]
    theta.setflags(write=False)
    return AngularEmbedding(theta, stress(theta, d), tuple(results))


def circular_order(e) -> np.ndarray:
    """Indices sorted by angle in [0, 2*pi), ties to the lower index."""
    theta = e.theta if isinstance(e, AngularEmbedding) else np.asarray(e, dtype=np.float64)
    return np.argsort(_wrap(np.asarray(theta, dtype=np.float64)), kind="stable")


def double_center(d) -> np.ndarray:
    """``-1/2 J (D*D) J`` with ``J = I - 1/N``."""
    d = np.asarray(d, dtype=np.float64)
    sq = d * d
    row = sq.mean(axis=1)
    col = sq.mean(axis=0)
    b = -0.5 * (sq - row[:, None] - col[None, :] + sq.mean())
    return 0.5 * (b + b.T)


def _power(a, b, v, max_iter, tol):
    rq = float(v @ b @ v)
    for _ in range(max_iter):
        w = a @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            # v already spans the null space
            return float(v @ b @ v), v, True
        v = w / norm
        bv = b @ v
        new_rq = float(v @ bv)
        scale = max(1.0, abs(new_rq))
        done = abs(new_rq - rq) < tol * scale and np.linalg.norm(bv - new_rq * v) < tol * scale
        rq = new_rq
        if done:
            return rq, v, True
    return rq, v, False


def top_eigenpair(b, max_iter: int = 10_000, tol: float = 1e-10):
    """Largest algebraic eigenpair of symmetric ``b`` by power iteration.

    Starts from the normalized ramp ``(1, ..., N)``. If the dominant
    eigenvalue turns out negative, the matrix is shifted by its magnitude and
    iterated again so the most positive eigenvalue wins. Stops once both the
    Rayleigh quotient and the residual ``|b v - rho v|`` are within ``tol``
    (relative to ``max(1, |rho|)``).
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.shape[0]
    v0 = np.arange(1, n + 1, dtype=np.float64)
    v0 /= np.linalg.norm(v0)
    rq, v, ok = _power(b, b, v0, max_iter, tol)
    if rq < 0:
        a = b + abs(rq) * np.eye(n)
        rq, v, ok = _power(a, b, v0, max_iter, tol)
    if not ok:
        warnings.warn(f"power iteration stopped after {max_iter} steps without converging", RuntimeWarning)
    return rq, v


def isomap_ordering(d) -> LinearOrdering:
    """One-dimensional classical MDS of ``d``; the permutation sorts the coordinate.

    The coordinate's sign is fixed so it correlates nonnegatively with the
    input index, which makes the output deterministic.
    """
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise DimensionMismatchError(f"distance matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    if n < 2:
        raise DimensionMismatchError("need at least two points to order")
    lam, v = top_eigenpair(double_center(d))
    if lam <= 1e-12:
        raise DegenerateSpectrumError(
            f"top eigenvalue {lam:.3g} is not positive; points are effectively coincident"
        )
    coord = np.sqrt(lam) * v
    ramp = np.arange(n) - (n - 1) / 2.0
    if coord @ ramp < 0:
        coord = -coord
    perm = np.argsort(coord, kind="stable")
    return LinearOrdering(perm, coord, lam)
