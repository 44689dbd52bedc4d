"""Subspaces of R^m, principal angles, distances and the projection embedding.

A subspace is stored as an ``n x m`` generator matrix with orthonormal rows.
Three metrics are supported:

* ``chordal``:  sqrt(sum sin^2 theta_i)
* ``geodesic``: sqrt(sum theta_i^2)
* ``maxangle``: max theta_i
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadDimensions,
    DimensionMismatch,
    NotOrthonormal,
    RankDeficient,
    RequiresSmallHalf,
    TooFewSubspaces,
)

METRICS = ("chordal", "geodesic", "maxangle")

ORTHO_TOL = 1e-10
SAME_SPAN_TOL = 1e-8
RANK_RTOL = 1e-12


def check_metric(metric: str) -> str:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    return metric


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Subspace:
    """An n-plane in R^m held as an orthonormal n x m generator matrix."""

    gen: np.ndarray

    def __post_init__(self):
        gen = np.asarray(self.gen, dtype=float)
        if gen.ndim == 1:
            gen = gen[np.newaxis, :]
        if gen.ndim != 2:
            raise BadDimensions("generator must be a 2-d array")
        n, m = gen.shape
        if not 1 <= n <= m:
            raise BadDimensions(f"need 1 <= n <= m, got n={n}, m={m}")
        err = np.max(np.abs(gen @ gen.T - np.eye(n)))
        if not err <= ORTHO_TOL:
            raise NotOrthonormal(f"rows not orthonormal (max error {err:.3g})")
        object.__setattr__(self, "gen", _frozen(gen))

    @property
    def n(self) -> int:
        return self.gen.shape[0]

    @property
    def m(self) -> int:
        return self.gen.shape[1]

    @classmethod
    def from_rows(cls, raw) -> "Subspace":
        return orthonormalize(raw)

    def complement(self) -> "Subspace":
        """Orthogonal complement, as an (m-n)-plane."""
        if self.n == self.m:
            raise BadDimensions("the whole space has no proper complement")
        u, _, _ = np.linalg.svd(self.gen.T, full_matrices=True)
        return orthonormalize(u[:, self.n:].T)

    def rotate(self, rot: np.ndarray) -> "Subspace":
        """Image under right multiplication of the generator by ``rot``."""
        return orthonormalize(self.gen @ rot)

    def __repr__(self):
        return f"Subspace(m={self.m}, n={self.n})"


@dataclass(frozen=True)
class PrincipalAngles:
    angles: np.ndarray
    left_vectors: np.ndarray | None = None
    right_vectors: np.ndarray | None = None
    # singular values of P.gen @ Q.gen.T, clamped, descending
    cosines: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True, eq=False)
class Packing:
    subspaces: tuple
    metric: str = "chordal"

    def __post_init__(self):
        subs = tuple(self.subspaces)
        if not subs:
            raise TooFewSubspaces("a packing needs at least one subspace")
        m, n = subs[0].m, subs[0].n
        for s in subs:
            if (s.m, s.n) != (m, n):
                raise DimensionMismatch("all subspaces of a packing must share (m, n)")
        check_metric(self.metric)
        object.__setattr__(self, "subspaces", subs)

    @property
    def m(self) -> int:
        return self.subspaces[0].m

    @property
    def n(self) -> int:
        return self.subspaces[0].n

    @property
    def N(self) -> int:
        return len(self.subspaces)

    def __len__(self):
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    def __getitem__(self, idx):
        return self.subspaces[idx]

    def generators(self) -> np.ndarray:
        """Stacked generators, shape (N, n, m)."""
        return np.stack([s.gen for s in self.subspaces])

    @classmethod
    def from_generators(cls, gens: Iterable, metric: str = "chordal", orthonormal: bool = False):
        make = Subspace if orthonormal else orthonormalize
        return cls(tuple(make(g) for g in gens), metric)

    def with_metric(self, metric: str) -> "Packing":
        return Packing(self.subspaces, metric)


@dataclass(frozen=True, eq=False)
class ProjectionPoint:
    mat: np.ndarray
    detraced: np.ndarray
    embed_vec: np.ndarray


def orthonormalize(raw) -> Subspace:
    """Orthonormal generator for the row space of ``raw`` (Gram-Schmidt order).

    Rows that are already orthonormal come back unchanged (up to rounding).
    """
    a = np.atleast_2d(np.asarray(raw, dtype=float))
    n, m = a.shape
    if n > m:
        raise RankDeficient(f"{n} rows cannot be independent in R^{m}")
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0 or s[-1] <= RANK_RTOL * s[0]:
        raise RankDeficient("rows are linearly dependent")
    q, r = np.linalg.qr(a.T)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return Subspace(q.T * signs[:, np.newaxis])


def random_subspace(m: int, n: int, rng: np.random.Generator) -> Subspace:
    """Uniformly distributed n-plane (orthonormalized Gaussian matrix)."""
    return orthonormalize(rng.standard_normal((n, m)))


def _check_pair(P: Subspace, Q: Subspace):
    if P.m != Q.m or P.n != Q.n:
        raise DimensionMismatch(f"G({P.m},{P.n}) vs G({Q.m},{Q.n})")


def _canonical_order(P: Subspace, Q: Subspace):
    # fixes the floating-point evaluation order so that d(P,Q) == d(Q,P) bit for bit
    if P.gen.ravel().tolist() > Q.gen.ravel().tolist():
        return Q, P
    return P, Q


def _hybrid(cos, sin):
    """Combine cosines (descending) and sines (ascending) of the same angles.

    Small angles are taken from their sines and large ones from their
    cosines, so neither end loses precision to cancellation.
    """
    cos = np.clip(cos, 0.0, 1.0)
    sin = np.clip(sin, 0.0, 1.0)
    small = cos > np.sqrt(0.5)
    angles = np.where(small, np.arcsin(sin), np.arccos(cos))
    sin_sq = np.where(small, sin * sin, (1.0 - cos) * (1.0 + cos))
    return angles, sin_sq


def _sines(P_gen, Q_gen):
    # singular values of the part of Q orthogonal to P, ascending
    R = Q_gen - (Q_gen @ P_gen.T) @ P_gen
    return np.sort(np.linalg.svd(R, compute_uv=False))


def principal_angles(P: Subspace, Q: Subspace, vectors: bool = False) -> PrincipalAngles:
    """Principal angles between two n-planes, ascending, in [0, pi/2].

    Angles come from the clamped singular values of ``P.gen @ Q.gen.T``;
    those below pi/4 are refined from the sines, which keep full relative
    precision where the cosines do not.
    """
    _check_pair(P, Q)
    M = P.gen @ Q.gen.T
    if vectors:
        u, s, vt = np.linalg.svd(M)
    else:
        s = np.linalg.svd(M, compute_uv=False)
    s = np.clip(s, 0.0, 1.0)
    angles, _ = _hybrid(s, _sines(P.gen, Q.gen))
    if not vectors:
        return PrincipalAngles(angles, cosines=s)
    return PrincipalAngles(angles, u.T @ P.gen, vt @ Q.gen, cosines=s)


def _pair_terms(P: Subspace, Q: Subspace):
    P, Q = _canonical_order(P, Q)
    s = np.linalg.svd(P.gen @ Q.gen.T, compute_uv=False)
    return _hybrid(s, _sines(P.gen, Q.gen))


def _distance_from_terms(angles, sin_sq, metric: str) -> float:
    if metric == "chordal":
        return float(np.sqrt(np.sum(sin_sq)))
    if metric == "geodesic":
        return float(np.sqrt(np.sum(angles * angles)))
    return float(np.max(angles))


def distance(P: Subspace, Q: Subspace, metric: str = "chordal") -> float:
    check_metric(metric)
    _check_pair(P, Q)
    return _distance_from_terms(*_pair_terms(P, Q), metric)


def chordal_sq(P: Subspace, Q: Subspace) -> float:
    _check_pair(P, Q)
    return float(np.sum(_pair_terms(P, Q)[1]))


def embedding_size(m: int) -> int:
    """Dimension m(m+1)/2 - 1 of the trace-zero symmetric matrices."""
    return m * (m + 1) // 2 - 1


def embed_matrix(detraced: np.ndarray) -> np.ndarray:
    """Coordinates of a trace-zero symmetric matrix in R^D.

    The m diagonal entries sum to zero, so they are mapped to m-1 coordinates
    by the Helmert contrasts (dropping the last diagonal entry outright would
    not preserve the norm).  Then the strict upper triangle follows, row by
    row, scaled by sqrt(2).  The Euclidean norm of the result equals the
    Frobenius norm of the input.
    """
    m = detraced.shape[0]
    iu = np.triu_indices(m, 1)
    diag = np.diag(detraced)
    return np.concatenate([_helmert(diag), np.sqrt(2.0) * detraced[iu]])


def _helmert(diag: np.ndarray) -> np.ndarray:
    # zero-sum vectors in R^m -> R^{m-1}, norm preserving
    m = diag.shape[0]
    out = np.empty(m - 1)
    csum = np.cumsum(diag)
    for k in range(1, m):
        out[k - 1] = (csum[k - 1] - k * diag[k]) / np.sqrt(k * (k + 1))
    return out


def projection(P: Subspace) -> ProjectionPoint:
    mat = P.gen.T @ P.gen
    mat = 0.5 * (mat + mat.T)
    detraced = mat - (P.n / P.m) * np.eye(P.m)
    return ProjectionPoint(_frozen(mat), _frozen(detraced), _frozen(embed_matrix(detraced)))


def chordal_via_projection(P: Subspace, Q: Subspace) -> float:
    _check_pair(P, Q)
    diff = projection(P).mat - projection(Q).mat
    return float(np.sqrt(0.5 * np.sum(diff * diff)))


def pairwise_terms(gens: np.ndarray):
    """Principal angles and sin^2 terms for all pairs i<j in row-major order, shape (K, n)."""
    N = gens.shape[0]
    iu, ju = np.triu_indices(N, 1)
    A, B = gens[iu], gens[ju]
    c = np.linalg.svd(A @ B.transpose(0, 2, 1), compute_uv=False)
    R = B - (B @ A.transpose(0, 2, 1)) @ A
    sn = np.sort(np.linalg.svd(R, compute_uv=False), axis=1)
    return _hybrid(c, sn)


def pairwise_distances(packing: Packing, metric: str | None = None, squared: bool = False) -> np.ndarray:
    """Symmetric N x N matrix of distances (or squared distances)."""
    metric = check_metric(metric or packing.metric)
    N = packing.N
    D = np.zeros((N, N))
    if N < 2:
        return D
    angles, sin_sq = pairwise_terms(packing.generators())
    if metric == "chordal":
        vals = np.sum(sin_sq, axis=1)
    elif metric == "geodesic":
        vals = np.sum(angles * angles, axis=1)
    else:
        vals = np.max(angles, axis=1) ** 2
    if not squared:
        vals = np.sqrt(vals)
    iu, ju = np.triu_indices(N, 1)
    D[iu, ju] = vals
    D[ju, iu] = vals
    return D


def min_distance(packing: Packing, metric: str | None = None) -> tuple[float, tuple[int, int]]:
    """Smallest pairwise distance and the lexicographically first pair attaining it."""
    if packing.N < 2:
        raise TooFewSubspaces("min_distance needs at least two subspaces")
    D = pairwise_distances(packing, metric)
    iu, ju = np.triu_indices(packing.N, 1)
    k = int(np.argmin(D[iu, ju]))
    return float(D[iu[k], ju[k]]), (int(iu[k]), int(ju[k]))


def embedding_dimension(packing: Packing, rtol: float = 1e-8) -> int:
    """Smallest D' with N points in R^D' realising the chordal distances."""
    if packing.N < 2:
        raise TooFewSubspaces("embedding_dimension needs at least two subspaces")
    D2 = pairwise_distances(packing, "chordal", squared=True)
    N = packing.N
    J = np.eye(N) - np.full((N, N), 1.0 / N)
    gram = -0.5 * J @ D2 @ J
    s = np.linalg.svd(gram, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _complete_basis(cols: list, m: int) -> list:
    """Extend orthonormal columns to a basis using the standard basis vectors in order."""
    basis = [c for c in cols if c is not None]
    extra = []
    for k in range(m):
        if len(basis) + len(extra) == m:
            break
        v = np.zeros(m)
        v[k] = 1.0
        for b in basis + extra:
            v -= (b @ v) * b
        for b in basis + extra:
            v -= (b @ v) * b
        nv = np.linalg.norm(v)
        if nv > 0.5:
            extra.append(v / nv)
    return extra


def canonical_pair(P: Subspace, Q: Subspace):
    """Rotation R bringing a pair into the standard form.

    Returns ``(R, angles, left, right)`` where ``left @ R`` is ``[I 0 0]`` and
    ``right @ R`` is ``[diag(cos) diag(sin) 0]``; ``left``/``right`` are the
    principal vectors, i.e. orthonormal bases of P and Q.
    """
    _check_pair(P, Q)
    n, m = P.n, P.m
    if 2 * n > m:
        raise RequiresSmallHalf(f"need n <= m/2, got G({m},{n})")
    pa = principal_angles(P, Q, vectors=True)
    U = pa.left_vectors.copy()
    V = pa.right_vectors.copy()
    # deterministic signs: largest |entry| of each u_i positive
    for i in range(n):
        k = int(np.argmax(np.abs(U[i])))
        if U[i, k] < 0:
            U[i] *= -1
            V[i] *= -1
    c = pa.cosines
    sn = np.sqrt((1.0 - c) * (1.0 + c))
    cols = [U[i] for i in range(n)]
    second = []
    for i in range(n):
        if sn[i] > 1e-12:
            w = V[i] - c[i] * U[i]
            for b in cols + [x for x in second if x is not None]:
                w -= (b @ w) * b
            second.append(w / np.linalg.norm(w))
        else:
            second.append(None)
    extra = _complete_basis(cols + second, m)
    it = iter(extra)
    second = [x if x is not None else next(it) for x in second]
    R = np.column_stack(cols + second + list(it))
    return R, pa.angles, U, V


def stack_generators(subspaces: Sequence[Subspace]) -> np.ndarray:
    return np.stack([s.gen for s in subspaces])
