"""Record packings: best known minimal distances, stored as published (4 decimals).

Line records (n = 1) are minimal angles in degrees and apply to every
metric.  Plane records are d_c^2 for the chordal metric and d_g^2 for the
geodesic one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Packing, check_metric, min_distance
from .errors import NoRecord

RECORD_TOL = 5e-5

TABLE1 = "best known line packings in R^3"
TABLE2 = "best known chordal plane packings in R^4"
PROSE4 = "explicit plane constructions in R^4"
PROSE5 = "Clifford orbit of 4-spaces in R^8"


@dataclass(frozen=True)
class RecordEntry:
    m: int
    n: int
    N: int
    metric: str  # "angle" for line records
    value: float
    source: str
    construction: str | None = None
    proven_optimal: bool = False

    @property
    def unit(self) -> str:
        if self.n == 1:
            return "degrees"
        return "d_c^2" if self.metric == "chordal" else "d_g^2"


_LINES = {
    2: 90.0000, 3: 90.0000, 4: 70.5288, 5: 63.4349, 6: 63.4349, 7: 54.7356,
    8: 49.6399, 9: 47.9821, 10: 46.6746, 11: 44.4031, 12: 41.8820, 13: 39.8131,
    14: 38.6824, 15: 38.1349, 16: 37.3774, 17: 35.2353, 18: 34.4088, 19: 33.2115,
    20: 32.7071, 21: 32.2161, 22: 31.8963, 23: 30.5062, 24: 30.1628, 25: 29.2486,
    26: 28.7126, 27: 28.2495, 28: 27.8473,
}

_PLANES = {
    3: 1.5000, 4: 1.3333, 5: 1.2500, 6: 1.2000, 7: 1.1667, 8: 1.1429, 9: 1.1231,
    10: 1.1111, 11: 1.0000, 12: 1.0000, 13: 1.0000, 14: 1.0000, 15: 1.0000,
    16: 1.0000, 17: 1.0000, 18: 1.0000, 19: 0.9091, 20: 0.9091, 21: 0.8684,
    22: 0.8629, 23: 0.8451, 24: 0.8372, 25: 0.8275, 26: 0.8144, 27: 0.8056,
    28: 0.8005, 29: 0.7889, 30: 0.7809, 31: 0.7760, 32: 0.7691, 33: 0.7592,
    34: 0.7549, 35: 0.7489, 36: 0.7477, 37: 0.7286, 38: 0.7198, 39: 0.7095,
    40: 0.7066, 41: 0.6992, 42: 0.6948, 43: 0.6844, 44: 0.6831, 45: 0.6809,
    46: 0.6793, 47: 0.6732, 48: 0.6667, 49: 0.6667, 50: 0.6667,
}

_LINE_CONSTRUCTIONS = {
    2: "square", 3: "octahedron", 4: "cube", 5: "pentagonal antiprism", 6: "icosahedron",
    7: "rhombic dodecahedron", 10: "hexakis bi-antiprism", 12: "rhombicuboctahedron",
    16: "pentakis dodecahedron",
}

_PLANE_CONSTRUCTIONS = {
    3: "binocular.small_packings(3)", 4: "binocular.small_packings(4)",
    5: "binocular.small_packings(5)", 6: "binocular.icosahedron_packing()",
    18: "binocular.octahedron_packing()",
}


def _build() -> dict:
    recs = {}

    def add(e: RecordEntry):
        recs[(e.m, e.n, e.N, e.metric)] = e

    for N, v in _LINES.items():
        # N <= 6 proven optimal classically; N = 7 meets the orthoplex bound of G(3,1)
        add(RecordEntry(3, 1, N, "angle", v, TABLE1, _LINE_CONSTRUCTIONS.get(N), N <= 7))
    for N, v in _PLANES.items():
        at_bound = N <= 18 and N != 9
        add(RecordEntry(4, 2, N, "chordal", v, TABLE2, _PLANE_CONSTRUCTIONS.get(N), at_bound))
    add(RecordEntry(4, 2, 2, "chordal", 2.0, PROSE4, "binocular.small_packings(2)", True))
    add(RecordEntry(4, 2, 2, "geodesic", round(np.pi**2 / 2, 4), PROSE4, "binocular.small_packings(2)"))
    add(RecordEntry(4, 2, 3, "geodesic", round(5 * np.pi**2 / 18, 4), PROSE4, "binocular.three_geodesic_packing()"))
    add(RecordEntry(4, 2, 6, "geodesic", 2.6824, PROSE4, "binocular.icosahedron_packing()"))
    add(RecordEntry(8, 4, 70, "chordal", 2.0, PROSE5, "clifford.seventy_packing_eq55()", True))
    return recs


RECORDS = _build()


def lookup(m: int, n: int, N: int, metric: str = "chordal") -> RecordEntry | None:
    """Stored record, or None.  For lines every metric maps to the angle record."""
    if n == 1:
        metric = "angle"
    elif metric != "angle":
        check_metric(metric)
    return RECORDS.get((m, n, N, metric))


def all_records() -> list[RecordEntry]:
    return sorted(RECORDS.values(), key=lambda e: (e.m, e.n, e.metric, e.N))


def dump() -> str:
    """Tab-separated ``m n N metric value source`` lines."""
    return "".join(
        f"{e.m}\t{e.n}\t{e.N}\t{e.metric}\t{e.value:.4f}\t{e.source}\n" for e in all_records()
    )


def record_value(packing: Packing, metric: str | None = None) -> float:
    """Achieved value of a packing in the units its record uses."""
    metric = metric or packing.metric
    if packing.n == 1:
        d, _ = min_distance(packing, "chordal")
        return float(np.degrees(np.arcsin(min(d, 1.0))))
    d, _ = min_distance(packing, metric)
    return d * d


def verify_against_record(packing: Packing, tol: float = RECORD_TOL, metric: str | None = None):
    """``(status, delta)`` with status in {"beats", "matches", "below"}; delta = achieved - record."""
    metric = metric or packing.metric
    rec = lookup(packing.m, packing.n, packing.N, metric)
    if rec is None:
        raise NoRecord(f"no record for G({packing.m},{packing.n}), N={packing.N}, {metric}")
    delta = record_value(packing, metric) - rec.value
    if delta > tol:
        return "beats", delta
    if delta >= -tol:
        return "matches", delta
    return "below", delta
