"""Rankin simplex and orthoplex bounds for chordal packings, and certification."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Packing, pairwise_distances
from .errors import BadDimensions, TooFewSubspaces

DEFAULT_TOL = 1e-6


def _check(m: int, n: int):
    if not (1 <= n < m):
        raise BadDimensions(f"need 1 <= n < m, got m={m}, n={n}")


def orthoplex_bound(m: int, n: int) -> float:
    """Upper bound n(m-n)/m on d_c^2, valid for N > m(m+1)/2."""
    _check(m, n)
    return n * (m - n) / m


def simplex_bound(m: int, n: int, N: int) -> float:
    """Upper bound on d_c^2 for any N subspaces."""
    _check(m, n)
    if N < 2:
        raise BadDimensions("the simplex bound needs N >= 2")
    return orthoplex_bound(m, n) * N / (N - 1)


def max_simplex_N(m: int) -> int:
    return m * (m + 1) // 2


def max_orthoplex_N(m: int) -> int:
    return (m - 1) * (m + 2)


def governing_bound(m: int, n: int, N: int) -> tuple[str, float]:
    if N <= max_simplex_N(m):
        return "simplex", simplex_bound(m, n, N)
    return "orthoplex", orthoplex_bound(m, n)


@dataclass(frozen=True)
class BoundReport:
    m: int
    n: int
    N: int
    min_d2: float
    simplex_bound: float
    orthoplex_bound: float
    applicable: str
    attained: str  # "yes", "no" or "within-tolerance"
    tolerance_used: float
    equidistant: bool

    @property
    def is_attained(self) -> bool:
        return self.attained != "no"

    def lines(self) -> list[str]:
        def f(x):
            return f"{x:.17g}"

        return [
            f"m={self.m}",
            f"n={self.n}",
            f"N={self.N}",
            f"min_d2={f(self.min_d2)}",
            f"simplex_bound={f(self.simplex_bound)}",
            f"orthoplex_bound={f(self.orthoplex_bound)}",
            f"governing={self.applicable}",
            f"attainment={self.attained}",
            f"attained={self.applicable if self.is_attained else 'no'}",
            f"equidistant={str(self.equidistant).lower()}",
            f"tolerance={f(self.tolerance_used)}",
        ]


def certify(packing: Packing, tol: float = DEFAULT_TOL) -> BoundReport:
    """Compare the minimal d_c^2 of a packing with the Rankin bound that governs it.

    Simplex attainment additionally requires every pair to sit at the same
    distance (a regular simplex), not just the closest one.
    """
    if packing.N < 2:
        raise TooFewSubspaces("certify needs at least two subspaces")
    if tol <= 0:
        raise ValueError("tol must be positive")
    m, n, N = packing.m, packing.n, packing.N
    D2 = pairwise_distances(packing, "chordal", squared=True)
    iu = np.triu_indices(N, 1)
    d2 = D2[iu]
    min_d2 = float(d2.min())
    kind, bound = governing_bound(m, n, N)
    gap = bound - min_d2
    equidistant = bool(d2.max() - d2.min() <= tol)
    ok = abs(gap) <= tol
    if kind == "simplex":
        ok = ok and equidistant
    else:
        ok = ok and N <= max_orthoplex_N(m)
    if not ok:
        status = "no"
    elif abs(gap) <= 4 * np.finfo(float).eps * max(1.0, bound) and (kind != "simplex" or d2.max() == d2.min()):
        status = "yes"
    else:
        status = "within-tolerance"
    return BoundReport(
        m, n, N, min_d2,
        simplex_bound(m, n, N), orthoplex_bound(m, n),
        kind, status, tol, equidistant,
    )
