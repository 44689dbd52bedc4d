"""Multi-start maximisation of the minimal distance of N subspaces.

Each start draws N random subspaces and climbs a log-sum-exp softmin of the
pairwise squared distances, sharpening the softmin in stages.  Steps are
taken along the Grassmann tangent direction, followed by Gram-Schmidt
re-orthonormalisation, with a backtracking line search on the surrogate.

The chordal gradient is analytic.  The geodesic and max-angle gradients
come from central differences of the pair distance.  Those distances have a
ridge where a principal angle reaches pi/2 (the singular value ``s`` behaves
like ``|x|`` there), and good packings sit on that ridge.  Inside the climb
``|s|`` is replaced by ``sqrt(s^2 + eps^2)`` with ``eps = 1/sqrt(beta)``, so
the ridge is smoothed early and sharpened together with the softmin.
Reported distances are always exact.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._kernels_py import orthonormalize_rows as _orth_batch
from .core import Packing, Subspace, check_metric, min_distance, pairwise_distances
from .errors import BadDimensions

log = logging.getLogger(__name__)

HALF_PI = np.pi / 2
KINK_TOL = 1e-6


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 50
    max_iters: int = 4000
    seed: int = 0
    metric: str = "chordal"
    # (initial softmin sharpness, growth factor per stage, number of stages)
    beta_schedule: tuple = (10.0, 4.0, 12)
    # (initial step, shrink factor, minimal step)
    step: tuple = (0.1, 0.5, 1e-9)
    fd_step: float = 1e-5
    target: float | None = None
    workers: int = 1

    def __post_init__(self):
        check_metric(self.metric)
        beta0, growth, stages = self.beta_schedule
        step0, shrink, min_step = self.step
        if self.starts < 1 or self.max_iters < 1 or stages < 1:
            raise ValueError("starts, max_iters and stages must be positive")
        if beta0 <= 0 or growth <= 1:
            raise ValueError("beta schedule needs beta0 > 0 and growth > 1")
        if step0 <= 0 or not 0 < shrink < 1 or min_step <= 0:
            raise ValueError("step needs step0 > 0, 0 < shrink < 1, min_step > 0")
        if self.fd_step <= 0:
            raise ValueError("fd_step must be positive")

    def betas(self) -> list[float]:
        beta0, growth, stages = self.beta_schedule
        return [beta0 * growth**s for s in range(int(stages))]


@dataclass(frozen=True)
class OptimizeResult:
    packing: Packing
    min_dist: float
    start_index: int
    iters_used: int
    converged: bool
    rattlers: list = field(default_factory=list)
    surrogate: float = float("nan")
    history: tuple = ()  # best min_dist after each start, in start order

    @property
    def min_d2(self) -> float:
        return self.min_dist**2


# -- pair distances and gradients ------------------------------------------


def _pair_sq(A: np.ndarray, B: np.ndarray, metric: str, eps: float = 0.0) -> np.ndarray:
    """Squared distance for stacked pairs A[k], B[k] (shape (K, n, m))."""
    s = np.linalg.svd(A @ B.transpose(0, 2, 1), compute_uv=False)
    s = np.clip(s, 0.0, 1.0)
    if metric == "chordal":
        return np.sum((1.0 - s) * (1.0 + s), axis=1)
    if eps > 0:
        s = np.sqrt((s * s + eps * eps) / (1.0 + eps * eps))
    th = np.arccos(s)
    if metric == "geodesic":
        return np.sum(th * th, axis=1)
    return np.max(th, axis=1) ** 2


def gradient_chordal(packing: Packing, pair) -> tuple[np.ndarray, np.ndarray]:
    """Gradient of d_c^2 = n - ||A B^T||^2 with respect to both generators.

    Rows are treated as unconstrained.
    """
    i, j = pair
    A, B = packing[i].gen, packing[j].gen
    C = A @ B.T
    return -2.0 * C @ B, -2.0 * C.T @ A


def _fd_block(X, other, metric, h, one_sided, eps):
    n, m = X.shape
    eye = np.eye(n * m).reshape(n * m, n, m)
    plus = _orth_batch(X[None] + h * eye)
    others = np.broadcast_to(other, plus.shape)
    fp = _pair_sq(plus, others, metric, eps)
    if one_sided:
        f0 = _pair_sq(X[None], other[None], metric, eps)[0]
        g = (fp - f0) / h
    else:
        minus = _orth_batch(X[None] - h * eye)
        g = (fp - _pair_sq(minus, others, metric, eps)) / (2 * h)
    return g.reshape(n, m)


def _pair_fd(A, B, metric, h, eps=0.0):
    one_sided = False
    if metric != "chordal" and eps == 0.0:
        s = np.clip(np.linalg.svd(A @ B.T, compute_uv=False), 0.0, 1.0)
        one_sided = bool(np.any(np.abs(np.arccos(s) - HALF_PI) < KINK_TOL))
    return _fd_block(A, B, metric, h, one_sided, eps), _fd_block(B, A, metric, h, one_sided, eps)


def gradient_geodesic_fd(packing: Packing, pair, h: float = 1e-5, metric: str = "geodesic"):
    """Finite-difference gradient of the squared pair distance.

    Every probe is re-orthonormalised before evaluation; near a principal
    angle of pi/2 a forward difference replaces the central one.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    i, j = pair
    return _pair_fd(packing[i].gen, packing[j].gen, metric, h)


# -- surrogate objective ------------------------------------------------------


def _ridge_eps(beta):
    return 1.0 / np.sqrt(beta)


def _softmin_generic(Y, beta, metric, h):
    N = Y.shape[0]
    eps = _ridge_eps(beta)
    iu, ju = np.triu_indices(N, 1)
    d = _pair_sq(Y[iu], Y[ju], metric, eps)
    dmin = d.min()
    e = np.exp(-beta * (d - dmin))
    total = e.sum()
    w = e / total
    grad = np.zeros_like(Y)
    for k in np.flatnonzero(w > 1e-14):
        gi, gj = _pair_fd(Y[iu[k]], Y[ju[k]], metric, h, eps)
        grad[iu[k]] += w[k] * gi
        grad[ju[k]] += w[k] * gj
    return dmin - np.log(total) / beta, grad, dmin


def _softmin_value(Y, beta, metric):
    if metric == "chordal":
        D = kernels.chordal_sq_matrix(Y)
        d = D[np.triu_indices(Y.shape[0], 1)]
    else:
        iu, ju = np.triu_indices(Y.shape[0], 1)
        d = _pair_sq(Y[iu], Y[ju], metric, _ridge_eps(beta))
    dmin = d.min()
    return dmin - np.log(np.sum(np.exp(-beta * (d - dmin)))) / beta


def _softmin(Y, beta, metric, h):
    if metric == "chordal":
        return kernels.softmin_chordal(Y, beta)
    return _softmin_generic(Y, beta, metric, h)


# -- single start -------------------------------------------------------------


def _climb(Y, config: OptimizerConfig):
    step0, shrink, min_step = config.step
    betas = config.betas()
    budget = max(1, config.max_iters // len(betas))
    iters = 0
    converged = False
    value = float("nan")
    for beta in betas:
        t = step0
        value, grad, _ = _softmin(Y, beta, config.metric, config.fd_step)
        converged = False
        for _ in range(budget):
            iters += 1
            G = kernels.project_tangent(Y, grad)
            gmax = np.sqrt(np.max(np.sum(G * G, axis=(1, 2))))
            if gmax < 1e-14:
                converged = True
                break
            D = G / gmax
            while t >= min_step:
                Y1 = kernels.orthonormalize_rows(Y + t * D)
                v1 = _softmin_value(Y1, beta, config.metric)
                if v1 > value:
                    break
                t *= shrink
            if t < min_step:
                converged = True
                break
            Y = Y1
            value, grad, _ = _softmin(Y, beta, config.metric, config.fd_step)
            t = min(2.0 * t, step0)
    return Y, iters, converged, float(value)


def _run_start(m, n, N, config: OptimizerConfig, r: int):
    rng = np.random.default_rng(config.seed ^ r)
    Y = kernels.orthonormalize_rows(rng.standard_normal((N, n, m)))
    Y, iters, converged, surrogate = _climb(Y, config)
    packing = Packing(tuple(Subspace(y) for y in Y), config.metric)
    dist, _ = min_distance(packing)
    return dist, packing, iters, converged, surrogate


def optimize(m: int, n: int, N: int, config: OptimizerConfig | None = None) -> OptimizeResult:
    """Best of ``config.starts`` independent climbs; deterministic in ``config.seed``."""
    config = config or OptimizerConfig()
    if not (1 <= n <= m) or (n > 1 and 2 * n > m):
        raise BadDimensions(f"need 1 <= n <= m/2 (or n = 1), got G({m},{n})")
    if N < 2:
        raise BadDimensions("need N >= 2")

    stop_at = config.target - 1e-9 if config.target is not None else None
    best = None
    history = []

    def consider(r, res):
        nonlocal best
        if best is None or res[0] > best[1][0]:
            best = (r, res)
        history.append(best[1][0])
        log.debug("start %d: min_dist=%.12g best=%.12g", r, res[0], best[1][0])
        return stop_at is not None and res[0] >= stop_at

    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            futures = [pool.submit(_run_start, m, n, N, config, r) for r in range(config.starts)]
            try:
                for r, fut in enumerate(futures):
                    if consider(r, fut.result()):
                        break
            finally:
                for fut in futures:
                    fut.cancel()
    else:
        for r in range(config.starts):
            if consider(r, _run_start(m, n, N, config, r)):
                break

    r, (dist, packing, iters, converged, surrogate) = best
    return OptimizeResult(
        packing=packing,
        min_dist=dist,
        start_index=r,
        iters_used=iters,
        converged=converged,
        rattlers=detect_rattlers(packing, config.metric),
        surrogate=surrogate,
        history=tuple(history),
    )


def detect_rattlers(packing: Packing, metric: str | None = None, tol: float = 1e-5) -> list[int]:
    """Members whose nearest neighbour is farther than the packing minimum by more than ``tol``."""
    if packing.N < 3:
        return []
    D = pairwise_distances(packing, metric)
    np.fill_diagonal(D, np.inf)
    nearest = D.min(axis=1)
    return [int(i) for i in np.flatnonzero(nearest > nearest.min() + tol)]
