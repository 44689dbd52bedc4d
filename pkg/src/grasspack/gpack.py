"""Reading and writing the ``.gpack`` text format.

::

    gpack 1
    m 4 n 2 N 3 metric chordal
    # subspace 0
    <n lines of m floats>
    ...

Floats are written with 17 significant digits so that 64-bit values
survive a round trip.  Blank lines and ``#`` lines are ignored on input.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .core import METRICS, Packing, Subspace
from .errors import GpackFormatError


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def dumps(packing: Packing, comments: list[str] | None = None) -> str:
    out = io.StringIO()
    out.write("gpack 1\n")
    out.write(f"m {packing.m} n {packing.n} N {packing.N} metric {packing.metric}\n")
    for c in comments or []:
        out.write(f"# {c}\n")
    for idx, s in enumerate(packing):
        out.write(f"# subspace {idx}\n")
        for row in s.gen:
            out.write(" ".join(fmt(v) for v in row) + "\n")
    return out.getvalue()


def write(packing: Packing, path, comments: list[str] | None = None) -> None:
    Path(path).write_text(dumps(packing, comments), encoding="utf-8", newline="\n")


def parse(text: str):
    """Parse .gpack text into ``(m, n, metric, blocks)`` without validating orthonormality."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0].split() != ["gpack", "1"]:
        raise GpackFormatError("missing 'gpack 1' header")
    if len(lines) < 2:
        raise GpackFormatError("missing dimension line")
    head = lines[1].split()
    if len(head) != 8 or head[0::2] != ["m", "n", "N", "metric"]:
        raise GpackFormatError(f"bad dimension line: {lines[1]!r}")
    try:
        m, n, N = int(head[1]), int(head[3]), int(head[5])
    except ValueError as exc:
        raise GpackFormatError(f"bad dimension line: {lines[1]!r}") from exc
    metric = head[7]
    if metric not in METRICS:
        raise GpackFormatError(f"unknown metric {metric!r}")
    rows = lines[2:]
    if len(rows) != N * n:
        raise GpackFormatError(f"expected {N * n} rows, found {len(rows)}")
    try:
        data = np.array([[float(t) for t in r.split()] for r in rows], dtype=float)
    except ValueError as exc:
        raise GpackFormatError("non-numeric entry") from exc
    if data.ndim != 2 or data.shape[1] != m:
        raise GpackFormatError(f"every row must have {m} entries")
    return m, n, metric, data.reshape(N, n, m)


def loads(text: str) -> Packing:
    _, _, metric, blocks = parse(text)
    return Packing(tuple(Subspace(b) for b in blocks), metric)


def read(path) -> Packing:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps_pairs(pairs) -> str:
    return "".join(" ".join(fmt(v) for v in (*p.l, *p.r)) + "\n" for p in pairs)


def parse_pairs(text: str) -> np.ndarray:
    """Rows ``lx ly lz rx ry rz``; returns an (N, 6) array."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        data = np.array([[float(t) for t in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise GpackFormatError("non-numeric entry in pairs file") from exc
    if data.ndim != 2 or data.shape[1] != 6:
        raise GpackFormatError("pairs file rows must have 6 entries")
    return data
