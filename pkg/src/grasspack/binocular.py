"""Planes in R^4 as sign classes of pairs of points on two 2-spheres.

A plane P in G(4,2) determines the rotation alpha = 2 P - I, which fixes P
and negates its complement.  Writing alpha as x -> conj(l) x r with unit
quaternions l, r (basis 1, i, j, k) forces both to be purely imaginary, so
P corresponds to +-(l, r) in S^2 x S^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import Packing, Subspace, orthonormalize, projection
from .errors import NotAPlane, NotUnit, UnsupportedN

UNIT_TOL = 1e-10
SIGN_TOL = 1e-12


def qmul(p, q) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def left_matrix(q) -> np.ndarray:
    """Matrix of x -> q x."""
    a, b, c, d = q
    return np.array([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ], dtype=float)


def right_matrix(q) -> np.ndarray:
    """Matrix of x -> x q."""
    a, b, c, d = q
    return np.array([
        [a, -b, -c, -d],
        [b, a, d, -c],
        [c, -d, a, b],
        [d, c, -b, a],
    ], dtype=float)


def conj(q) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]], dtype=float)


# L(e_a) R(e_b), a, b = 0..3: an orthogonal basis of the 4x4 matrices, each of squared norm 4
_BASIS = np.array([[left_matrix(np.eye(4)[a]) @ right_matrix(np.eye(4)[b]) for b in range(4)] for a in range(4)])


def _canonical_sign(l, r):
    for x in l:
        if abs(x) > SIGN_TOL:
            if x < 0:
                return -l, -r
            break
    return l, r


@dataclass(frozen=True, eq=False)
class BinocularPair:
    l: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        l = np.asarray(self.l, dtype=float).reshape(3)
        r = np.asarray(self.r, dtype=float).reshape(3)
        if abs(np.linalg.norm(l) - 1) > UNIT_TOL or abs(np.linalg.norm(r) - 1) > UNIT_TOL:
            raise NotUnit("l and r must be unit vectors")
        l, r = _canonical_sign(l, r)
        l.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", r)

    @classmethod
    def normalized(cls, l, r) -> "BinocularPair":
        l = np.asarray(l, dtype=float)
        r = np.asarray(r, dtype=float)
        return cls(l / np.linalg.norm(l), r / np.linalg.norm(r))

    def rotation(self) -> np.ndarray:
        """The 4x4 matrix of x -> conj(l) x r."""
        lq = np.concatenate([[0.0], self.l])
        rq = np.concatenate([[0.0], self.r])
        return left_matrix(conj(lq)) @ right_matrix(rq)

    def __repr__(self):
        return f"BinocularPair(l={self.l.tolist()}, r={self.r.tolist()})"


@dataclass(frozen=True)
class BinocularCode:
    pairs: tuple

    @property
    def left_code(self) -> np.ndarray:
        ls = np.array([p.l for p in self.pairs])
        return np.concatenate([ls, -ls])

    @property
    def right_code(self) -> np.ndarray:
        rs = np.array([p.r for p in self.pairs])
        return np.concatenate([rs, -rs])

    def to_packing(self, metric: str = "chordal") -> Packing:
        return Packing(tuple(pair_to_plane(p) for p in self.pairs), metric)


def factor_rotation(alpha: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit quaternions (a, b), up to joint sign, with alpha = L(a) R(b)."""
    C = np.einsum("ij,abij->ab", alpha, _BASIS) / 4.0
    u, s, vt = np.linalg.svd(C)
    a = u[:, 0] * np.sqrt(s[0])
    b = vt[0] * np.sqrt(s[0])
    return a / np.linalg.norm(a), b / np.linalg.norm(b)


def plane_to_pair(P: Subspace) -> BinocularPair:
    if (P.m, P.n) != (4, 2):
        raise NotAPlane(f"binocular model needs G(4,2), got G({P.m},{P.n})")
    alpha = 2.0 * projection(P).mat - np.eye(4)
    a, b = factor_rotation(alpha)
    # alpha = L(conj(l)) R(r) with pure l: conj(l) = -l
    l, r = -a, b
    # fix the joint sign so that alpha is reproduced, not -alpha
    if np.sum((left_matrix(conj(l)) @ right_matrix(r) - alpha) ** 2) > 1.0:
        l = -l
    return BinocularPair.normalized(l[1:], r[1:])


def real_parts(P: Subspace) -> tuple[float, float]:
    """Real parts of the quaternions factoring the rotation of P (zero in exact arithmetic)."""
    alpha = 2.0 * projection(P).mat - np.eye(4)
    a, b = factor_rotation(alpha)
    return float(a[0]), float(b[0])


def pair_to_plane(pair: BinocularPair) -> Subspace:
    """The +1 eigenspace of x -> conj(l) x r."""
    alpha = pair.rotation()
    proj = 0.5 * (np.eye(4) + alpha)
    w, v = np.linalg.eigh(0.5 * (proj + proj.T))
    return orthonormalize(v[:, np.argsort(w)[-2:][::-1]].T)


def _angle(x, y) -> float:
    c = float(np.clip(np.dot(x, y), -1.0, 1.0))
    return float(np.arccos(c))


def pair_distance(p1: BinocularPair, p2: BinocularPair):
    """``(theta1, theta2, d_c^2, d_g^2)`` from the angles between left and right points."""
    phi = _angle(p1.l, p2.l)
    psi = _angle(p1.r, p2.r)
    if phi + psi > np.pi:
        phi, psi = np.pi - phi, np.pi - psi
    if phi > psi:
        phi, psi = psi, phi
    theta1 = (psi - phi) / 2
    theta2 = (psi + phi) / 2
    dc2 = 1.0 - np.cos(psi) * np.cos(phi)
    dg2 = (psi * psi + phi * phi) / 2
    return theta1, theta2, float(dc2), float(dg2)


def normalized_angles(p1: BinocularPair, p2: BinocularPair) -> tuple[float, float]:
    phi = _angle(p1.l, p2.l)
    psi = _angle(p1.r, p2.r)
    if phi + psi > np.pi:
        phi, psi = np.pi - phi, np.pi - psi
    return (phi, psi) if phi <= psi else (psi, phi)


def to_pairs(packing: Packing) -> list[BinocularPair]:
    return [plane_to_pair(P) for P in packing]


def code_min_distances(pairs) -> tuple[float, float]:
    """Minimal d_c^2 and d_g^2 over all pairs of a binocular code."""
    vals = [pair_distance(a, b) for a, b in combinations(pairs, 2)]
    return min(v[2] for v in vals), min(v[3] for v in vals)


# -- named constructions -------------------------------------------------------

TAU = (1 + np.sqrt(5)) / 2


def icosahedron_vertices(golden: float = TAU) -> np.ndarray:
    """One vertex from each antipodal pair of the icosahedron, unit length."""
    t = golden
    v = np.array([
        [0, 1, t], [0, 1, -t],
        [t, 0, 1], [-t, 0, 1],
        [1, t, 0], [1, -t, 0],
    ], dtype=float)
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def icosahedron_pairs() -> list[BinocularPair]:
    # partner of each vertex: its algebraic conjugate (sqrt5 -> -sqrt5), renormalised
    left = icosahedron_vertices(TAU)
    right = icosahedron_vertices((1 - np.sqrt(5)) / 2)
    return [BinocularPair(l, r) for l, r in zip(left, right)]


def icosahedron_packing() -> Packing:
    """Six planes forming a regular simplex in G(4,2), d_c^2 = 6/5."""
    return BinocularCode(tuple(icosahedron_pairs())).to_packing()


def octahedron_pairs() -> list[BinocularPair]:
    e = np.eye(3)
    pairs = []
    for a in range(3):
        for b in range(3):
            for s in (1.0, -1.0):
                pairs.append(BinocularPair(e[a], s * e[b]))
    return pairs


def octahedron_packing() -> Packing:
    """Eighteen planes from all octahedron vertex pairs; d_c^2 = 1."""
    return BinocularCode(tuple(octahedron_pairs())).to_packing()


def _equatorial(angle_deg: float) -> np.ndarray:
    a = np.radians(angle_deg)
    return np.array([np.cos(a), np.sin(a), 0.0])


def small_pairs(N: int) -> list[BinocularPair]:
    """Binocular codes of the chordal-best packings of N = 2, 4, 5 planes."""
    if N == 2:
        x = np.array([1.0, 0.0, 0.0])
        return [BinocularPair(x, x), BinocularPair(x, -x)]
    if N == 4:
        a = np.array([1.0, 0.0, 0.0])
        b = np.array([1 / np.sqrt(3), np.sqrt(2 / 3), 0.0])
        c = np.array([1 / np.sqrt(3), -np.sqrt(2 / 3), 0.0])
        return [BinocularPair(a, b), BinocularPair(a, c), BinocularPair(b, -a), BinocularPair(c, -a)]
    if N == 5:
        # pentagon on the left matched with the pentagram on the right
        return [BinocularPair(_equatorial(72 * k), _equatorial(144 * k)) for k in range(5)]
    raise UnsupportedN(f"no binocular code stored for N={N}")


def _three_chordal() -> Packing:
    r = np.sqrt(3) / 2
    gens = [
        [[1, 0, r, 0.5], [0, 1, -0.5, r]],
        [[1, 0, -r, 0.5], [0, 1, -0.5, -r]],
        [[1, 0, 0, -1], [0, 1, 1, 0]],
    ]
    return Packing.from_generators(gens)


def three_geodesic_packing() -> Packing:
    """Three planes with d_g^2 = 5 pi^2 / 18 (and d_c^2 = 1.25)."""
    gens = [
        [[1, -1, 0, 0], [0, 0, 0, 1]],
        [[1, 0, -1, 0], [0, 1, 0, 0]],
        [[1, 0, 0, -1], [0, 0, 1, 0]],
    ]
    return Packing.from_generators(gens, metric="geodesic")


def small_packings(N: int) -> Packing:
    """Chordal-best packings of N = 2..5 planes in R^4."""
    if N == 2:
        return Packing.from_generators([[[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 1, 0], [0, 0, 0, 1]]])
    if N == 3:
        return _three_chordal()
    if N in (4, 5):
        return BinocularCode(tuple(small_pairs(N))).to_packing()
    raise UnsupportedN(f"small_packings covers N = 2..5, got {N}")
