"""Exact Clifford-group constructions of Grassmannian packings in R^(2^i).

Coordinates of V = R^m, m = 2^i, are indexed by u in F_2^i, stored as the
integer whose binary expansion is (u_1 ... u_i) with u_1 the most
significant bit.  Matrix entries are integers times 2^(-e), optionally
times sqrt(2), so every product and orthogonality check is exact.
Subspaces are handled through their projection matrices, which stay
rational throughout the orbits built here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .core import Packing, orthonormalize
from .errors import BadParams, ClosureOverflow, OrbitOverflow, TooLarge

MAX_EXACT_I = 3


def dot(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


@dataclass(frozen=True)
class F2Vec:
    width: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"{self.bits} does not fit in {self.width} bits")

    def __add__(self, other: "F2Vec") -> "F2Vec":
        return F2Vec(self.width, self.bits ^ other.bits)

    def dot(self, other: "F2Vec") -> int:
        return dot(self.bits, other.bits)

    @classmethod
    def unit(cls, width: int, j: int) -> "F2Vec":
        """e_j, j = 1..width, counted from the most significant bit."""
        return cls(width, 1 << (width - j))


class ExactMatrix:
    """``num * sqrt(2)**root2 / 2**exp`` with an integer matrix ``num``."""

    __slots__ = ("num", "exp", "root2")

    def __init__(self, num, exp: int = 0, root2: bool = False):
        num = np.array(num, dtype=np.int64)
        exp = int(exp)
        if num.any():
            while exp > 0 and not np.any(num & 1):
                num >>= 1
                exp -= 1
        else:
            exp, root2 = 0, False
        num.setflags(write=False)
        self.num = num
        self.exp = exp
        self.root2 = bool(root2)

    @property
    def shape(self):
        return self.num.shape

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        num = self.num @ other.num
        exp = self.exp + other.exp
        root2 = self.root2 ^ other.root2
        if self.root2 and other.root2:
            exp -= 1
        if exp < 0:
            num = num << -exp
            exp = 0
        return ExactMatrix(num, exp, root2)

    def __neg__(self):
        return ExactMatrix(-self.num, self.exp, self.root2)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.num.T, self.exp, self.root2)

    def key(self):
        return (self.exp, self.root2, self.num.tobytes())

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.key() == other.key() and self.shape == other.shape

    def __hash__(self):
        return hash(self.key())

    def to_float(self) -> np.ndarray:
        scale = (np.sqrt(2.0) if self.root2 else 1.0) / 2.0**self.exp
        return self.num * scale

    def is_orthogonal(self) -> bool:
        return self.T @ self == identity(self.shape[0])

    def trace(self) -> Fraction:
        if self.root2:
            raise ValueError("trace is irrational")
        return Fraction(int(np.trace(self.num)), 1 << self.exp)

    def __repr__(self):
        r2 = "*sqrt2" if self.root2 else ""
        return f"ExactMatrix({self.num.tolist()}{r2}/2^{self.exp})"


def identity(m: int) -> ExactMatrix:
    return ExactMatrix(np.eye(m, dtype=np.int64))


# -- the extraspecial group and its normaliser ------------------------------


def x_gate(i: int, a: int) -> ExactMatrix:
    """X(a): e_u -> e_{u+a}."""
    m = 1 << i
    M = np.zeros((m, m), dtype=np.int64)
    for u in range(m):
        M[u ^ a, u] = 1
    return ExactMatrix(M)


def y_gate(i: int, b: int) -> ExactMatrix:
    """Y(b): e_u -> (-1)^(b.u) e_u."""
    m = 1 << i
    return ExactMatrix(np.diag([-1 if dot(b, u) else 1 for u in range(m)]))


def apply_f2(A, u: int, i: int) -> int:
    """A u over F_2; A is an i x i 0/1 array acting on (u_1 ... u_i)."""
    bits = [(u >> (i - 1 - c)) & 1 for c in range(i)]
    out = 0
    for row in range(i):
        out = (out << 1) | (sum(int(A[row][c]) * bits[c] for c in range(i)) & 1)
    return out


def g_gate(i: int, A, a: int = 0) -> ExactMatrix:
    """G(A, a): e_u -> e_{A u + a}."""
    m = 1 << i
    M = np.zeros((m, m), dtype=np.int64)
    for u in range(m):
        M[apply_f2(A, u, i) ^ a, u] = 1
    if sorted(np.argmax(M, axis=0).tolist()) != list(range(m)):
        raise BadParams("A is not invertible over F_2")
    return ExactMatrix(M)


def hadamard(i: int) -> ExactMatrix:
    """H_{u,v} = 2^(-i/2) (-1)^(u.v)."""
    m = 1 << i
    S = np.array([[-1 if dot(u, v) else 1 for v in range(m)] for u in range(m)], dtype=np.int64)
    # 2^(-i/2) = sqrt(2) / 2^((i+1)/2) when i is odd
    return ExactMatrix(S, (i + 1) // 2, i % 2 == 1)


def partial_hadamard(i: int, j: int) -> ExactMatrix:
    """The 2x2 Hadamard acting on coordinate bit j (1..i) only."""
    m = 1 << i
    bit = 1 << (i - j)
    S = np.zeros((m, m), dtype=np.int64)
    for u in range(m):
        for v in (u & ~bit, u | bit):
            S[u, v] = -1 if (u & v & bit) else 1
    return ExactMatrix(S, 1, True)


def transvection(i: int, s: int, t: int) -> np.ndarray:
    A = np.eye(i, dtype=np.int64)
    A[s, t] = 1
    return A


def group_generators(i: int) -> list[tuple[str, ExactMatrix]]:
    """Named generators of the Clifford group L for m = 2^i."""
    if i < 1:
        raise BadParams("i must be at least 1")
    gens = []
    for j in range(1, i + 1):
        e = F2Vec.unit(i, j).bits
        gens.append((f"X(e{j})", x_gate(i, e)))
        gens.append((f"Y(e{j})", y_gate(i, e)))
    for s in range(i):
        for t in range(i):
            if s != t:
                gens.append((f"G(I+E{s + 1}{t + 1})", g_gate(i, transvection(i, s, t))))
    for j in range(1, i + 1):
        gens.append((f"G(I,e{j})", g_gate(i, np.eye(i, dtype=np.int64), F2Vec.unit(i, j).bits)))
    gens.append(("H", hadamard(i)))
    # E, the G(A, a) and H alone only generate GL(i,2).2 on E/{+-I}
    for j in range(1, i + 1):
        gens.append((f"H(e{j})", partial_hadamard(i, j)))
    return gens


@dataclass(frozen=True)
class ExtraspecialElement:
    """(-1)^sign X(a) Y(b)."""

    i: int
    a: int
    b: int
    sign: int = 0

    def __mul__(self, other: "ExtraspecialElement") -> "ExtraspecialElement":
        s = (self.sign + other.sign + dot(other.a, self.b)) & 1
        return ExtraspecialElement(self.i, self.a ^ other.a, self.b ^ other.b, s)

    def matrix(self) -> ExactMatrix:
        M = x_gate(self.i, self.a) @ y_gate(self.i, self.b)
        return -M if self.sign else M


def identify_extraspecial(i: int, M: ExactMatrix) -> ExtraspecialElement | None:
    """The element +-X(a)Y(b) equal to M, or None when M is not in E."""
    if M.exp != 0 or M.root2:
        return None
    num = M.num
    col0 = np.flatnonzero(num[:, 0])
    if len(col0) != 1:
        return None
    a = int(col0[0])
    sign = 0 if num[a, 0] == 1 else 1
    b = 0
    for j in range(i):
        u = 1 << j
        if num[u ^ a, u] * (-1 if sign else 1) == -1:
            b |= u
    el = ExtraspecialElement(i, a, b, sign)
    return el if el.matrix() == M else None


def conjugation_action(i: int, g: ExactMatrix) -> tuple:
    """Action of g on E/{+-I} as images of the basis X(e_j), Y(e_j), packed (a << i | b)."""
    ginv = g.T
    images = []
    for j in range(i):
        for el in (ExtraspecialElement(i, 1 << j, 0), ExtraspecialElement(i, 0, 1 << j)):
            img = identify_extraspecial(i, g @ el.matrix() @ ginv)
            if img is None:
                raise ValueError("matrix does not normalise E")
            images.append((img.a << i) | img.b)
    return tuple(images)


def _compose_action(i, f, g):
    # (f o g) on packed vectors, f and g given by basis images
    def apply(h, v):
        out = 0
        for k, img in enumerate(h):
            j, is_y = divmod(k, 2)
            bit = (v >> j) & 1 if is_y else (v >> (i + j)) & 1
            if bit:
                out ^= img
        return out

    basis = []
    for j in range(i):
        basis.append(1 << (i + j))
        basis.append(1 << j)
    return tuple(apply(f, apply(g, v)) for v in basis)


def generated_order(i: int) -> int:
    """Order of the group generated by ``group_generators(i)``.

    Computed as |image in the isometry group of E/{+-I}| * |E|, using that
    the kernel of the conjugation action on E/{+-I} is E itself.
    """
    acts = [conjugation_action(i, g) for _, g in group_generators(i)]
    basis = []
    for j in range(i):
        basis.append(1 << (i + j))
        basis.append(1 << j)
    ident = tuple(basis)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for a in acts:
                c = _compose_action(i, a, h)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return len(seen) * 2 ** (2 * i + 1)


def extraspecial_elements(i: int) -> list[ExtraspecialElement]:
    m = 1 << i
    return [ExtraspecialElement(i, a, b, s) for a in range(m) for b in range(m) for s in (0, 1)]


def quad_form(i: int, a: int, b: int) -> int:
    """Q(X(a)Y(b)) = a.b; 1 exactly when the element squares to -I."""
    return dot(a, b)


def bilin_form(i: int, g1, g2) -> int:
    (a, b), (a2, b2) = g1, g2
    return dot(a, b2) ^ dot(a2, b)


# -- counting formulas ---------------------------------------------------------


def clifford_order(i: int) -> int:
    if i < 1:
        raise BadParams("i must be at least 1")
    return 2 ** (i * i + i + 2) * (2**i - 1) * prod(4**j - 1 for j in range(1, i))


def gaussian_binomial(i: int, k: int) -> int:
    num = prod(2 ** (i - j) - 1 for j in range(k))
    den = prod(2 ** (j + 1) - 1 for j in range(k))
    return num // den


def theorem3_count(i: int, k: int) -> int:
    """Number of 2^k-spaces in the packing of G(2^i, 2^k) built from totally singular spaces."""
    if not 0 <= k <= i - 1:
        raise BadParams(f"need 0 <= k <= i-1, got i={i}, k={k}")
    return 2 ** (i - k) * gaussian_binomial(i, k) * prod(2**j + 1 for j in range(k, i))


def orthoplex_family_count(i: int) -> int:
    """2(2^i - 1)(2^(i-1) + 1), the k = i-1 case."""
    return 2 * (2**i - 1) * (2 ** (i - 1) + 1)


def singular_subspace_count(i: int, d: int) -> int:
    """Number of d-dimensional totally singular subspaces of (F_2^2i, a.b), by enumeration."""
    if i > MAX_EXACT_I:
        raise TooLarge(f"enumeration is limited to i <= {MAX_EXACT_I}")
    if not 1 <= d <= i:
        raise BadParams(f"need 1 <= d <= i, got d={d}")
    m = 1 << i
    # vector (a, b) packed as a << i | b
    singular = [v for v in range(1, m * m) if dot(v >> i, v & (m - 1)) == 0]

    def perp(v, w):
        return bilin_form(i, (v >> i, v & (m - 1)), (w >> i, w & (m - 1))) == 0

    layer = {frozenset((0, v)) for v in singular}
    for _ in range(d - 1):
        nxt = set()
        for S in layer:
            for v in singular:
                if v not in S and all(perp(v, w) for w in S):
                    nxt.add(S | {v ^ w for w in S})
        layer = nxt
    return len(layer)


# -- exact subspaces and orbits ----------------------------------------------


@dataclass(frozen=True, eq=False)
class ExactSubspace:
    projection: ExactMatrix

    def __post_init__(self):
        P = self.projection
        if P.root2:
            raise ValueError("projection must be rational")
        if not (P.T == P and P @ P == P):
            raise ValueError("not a symmetric idempotent matrix")

    @property
    def m(self) -> int:
        return self.projection.shape[0]

    @property
    def n(self) -> int:
        return int(self.projection.trace())

    @property
    def key(self):
        return self.projection.key()

    def __eq__(self, other):
        return isinstance(other, ExactSubspace) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def image(self, g: ExactMatrix) -> "ExactSubspace":
        """Projection onto g(P), i.e. g P g^T."""
        return ExactSubspace(g @ self.projection @ g.T)

    def to_subspace(self):
        P = self.projection.to_float()
        w, v = np.linalg.eigh(P)
        order = np.argsort(w)[::-1][: self.n]
        return orthonormalize(v[:, order].T)

    @classmethod
    def coordinate(cls, m: int, coords) -> "ExactSubspace":
        d = np.zeros(m, dtype=np.int64)
        d[list(coords)] = 1
        return cls(ExactMatrix(np.diag(d)))

    @classmethod
    def from_integer_rows(cls, rows) -> "ExactSubspace":
        """Span of pairwise orthogonal integer rows of equal squared norm (a power of two)."""
        A = np.array(rows, dtype=np.int64)
        gram = A @ A.T
        norm = int(gram[0, 0])
        if not np.array_equal(gram, norm * np.eye(len(A), dtype=np.int64)) or norm & (norm - 1):
            raise ValueError("rows must be orthogonal with a common power-of-two norm")
        return cls(ExactMatrix(A.T @ A, norm.bit_length() - 1))


def orbit(seeds, generators, cap: int, overflow=OrbitOverflow) -> list[ExactSubspace]:
    """Breadth-first closure of ``seeds`` under the generator matrices, in insertion order."""
    seen = {}
    queue = deque()
    for s in seeds:
        if s.key not in seen:
            seen[s.key] = s
            queue.append(s)
    while queue:
        P = queue.popleft()
        for g in generators:
            Q = P.image(g)
            if Q.key not in seen:
                if len(seen) >= cap:
                    raise overflow(f"orbit exceeded {cap} elements")
                seen[Q.key] = Q
                queue.append(Q)
    return list(seen.values())


def base_space(i: int, k: int) -> ExactSubspace:
    """Span of e_u over u with i-k leading zeros."""
    return ExactSubspace.coordinate(1 << i, range(1 << k))


def theorem3_exact(i: int, k: int) -> list[ExactSubspace]:
    if not 0 <= k <= i - 1:
        raise BadParams(f"need 0 <= k <= i-1, got i={i}, k={k}")
    if i > MAX_EXACT_I:
        raise TooLarge(f"orbit construction is limited to i <= {MAX_EXACT_I}")
    gens = [g for _, g in group_generators(i)]
    return orbit([base_space(i, k)], gens, cap=10 * theorem3_count(i, k))


def to_packing(spaces, metric: str = "chordal") -> Packing:
    return Packing(tuple(s.to_subspace() for s in spaces), metric)


def theorem3_packing(i: int, k: int) -> Packing:
    """All images of the coordinate 2^k-space under the Clifford group, as floats."""
    return to_packing(theorem3_exact(i, k))


def exact_chordal_sq_matrix(spaces) -> list[list[Fraction]]:
    """d_c^2 = n - trace(P Q) for every pair, in exact arithmetic."""
    E = max(s.projection.exp for s in spaces)
    flat = np.stack([(s.projection.num << (E - s.projection.exp)).ravel() for s in spaces])
    gram = flat @ flat.T
    n = spaces[0].n
    scale = 1 << (2 * E)
    return [[n - Fraction(int(x), scale) for x in row] for row in gram]


def exact_min_chordal_sq(spaces) -> Fraction:
    D = exact_chordal_sq_matrix(spaces)
    N = len(spaces)
    return min(D[a][b] for a in range(N) for b in range(a + 1, N))


def exact_spectrum(spaces) -> list[Fraction]:
    """Sorted multiset of pairwise d_c^2."""
    D = exact_chordal_sq_matrix(spaces)
    N = len(spaces)
    return sorted(D[a][b] for a in range(N) for b in range(a + 1, N))


# -- the symmetric 70-space packing in R^8 -----------------------------------

# coordinates are labelled infinity, 0, 1, ..., 6
LABELS = ("inf", "0", "1", "2", "3", "4", "5", "6")
SEEDS_70 = (
    ("10000000", "01000000", "00100000", "00001000"),
    ("11000000", "00101000", "00010001", "00000110"),
)
PERMUTATIONS_70 = (
    (("0", "1", "2", "3", "4", "5", "6"),),
    (("inf", "0"), ("1", "6"), ("2", "3"), ("4", "5")),
    (("1", "2", "4"), ("3", "6", "5")),
)


def _cycles_matrix(cycles) -> ExactMatrix:
    idx = {lab: n for n, lab in enumerate(LABELS)}
    target = list(range(8))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            target[idx[a]] = idx[b]
    M = np.zeros((8, 8), dtype=np.int64)
    for src, dst in enumerate(target):
        M[dst, src] = 1
    return ExactMatrix(M)


def seventy_generators() -> list[ExactMatrix]:
    gens = []
    for j in range(1, 8):
        d = np.ones(8, dtype=np.int64)
        d[0] = d[j] = -1
        gens.append(ExactMatrix(np.diag(d)))
    gens.extend(_cycles_matrix(c) for c in PERMUTATIONS_70)
    return gens


def seventy_exact(cap: int = 1000) -> list[ExactSubspace]:
    seeds = [ExactSubspace.from_integer_rows([[int(c) for c in row] for row in seed]) for seed in SEEDS_70]
    return orbit(seeds, seventy_generators(), cap=cap, overflow=ClosureOverflow)


def seventy_packing_eq55() -> Packing:
    """70 four-spaces in R^8 with d_c^2 = 2, from two seeds and a signed permutation group."""
    return to_packing(seventy_exact())


def frame_x(i: int) -> ExactMatrix:
    """Columns e*_v = 2^(-i/2) sum_u (-1)^(u.v) e_u."""
    return hadamard(i)


def frame_y(i: int) -> ExactMatrix:
    return identity(1 << i)
