"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import binocular, bounds, catalog, clifford, gpack
from .core import (
    METRICS,
    Packing,
    Subspace,
    embedding_dimension,
    min_distance,
    pairwise_distances,
    projection,
)
from .errors import GpackFormatError, GrassError
from .optimizer import OptimizerConfig, optimize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return f"{float(x):.17g}"


def equivalent_angle_deg(d: float, n: int, metric: str) -> float:
    """Angle that, repeated in every principal direction, gives distance d."""
    if metric == "chordal":
        a = np.arcsin(min(1.0, d / np.sqrt(n)))
    elif metric == "geodesic":
        a = d / np.sqrt(n)
    else:
        a = d
    return float(np.degrees(a))


def _emit(out, **kv):
    for k, v in kv.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, (float, np.floating)):
            v = fmt(v)
        out.write(f"{k}={v}\n")


def _write_or_print(text: str, path, out):
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        out.write(text)


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


# -- subcommands -----------------------------------------------------------------


def cmd_optimize(args, out):
    config = OptimizerConfig(
        starts=args.starts, seed=args.seed, metric=args.metric,
        target=args.target, workers=args.workers,
        **({"max_iters": args.max_iters} if args.max_iters else {}),
    )
    res = optimize(args.m, args.n, args.N, config)
    comments = [f"optimize seed={args.seed} starts={args.starts} best_start={res.start_index}"]
    _write_or_print(gpack.dumps(res.packing, comments), args.out, out)
    if args.out:
        d2 = res.min_dist**2
        out.write(
            f"min_d2={fmt(d2)} angle_deg={fmt(equivalent_angle_deg(res.min_dist, args.n, args.metric))} "
            f"converged={str(res.converged).lower()}\n"
        )
    return EXIT_OK


def cmd_verify(args, out):
    text = _read_text(args.file)
    try:
        m, n, metric, blocks = gpack.parse(text)
    except GpackFormatError as exc:
        _emit(out, valid=False, error=str(exc))
        return EXIT_FAIL
    ortho = max(float(np.max(np.abs(b @ b.T - np.eye(n)))) for b in blocks)
    ok = ortho <= 1e-10
    _emit(out, m=m, n=n, N=len(blocks), metric=metric, orthonormality_error=ortho)
    if not ok:
        _emit(out, valid=False)
        return EXIT_FAIL
    packing = Packing(tuple(Subspace(b) for b in blocks), metric)
    if packing.N >= 2:
        d, (i, j) = min_distance(packing)
        _emit(out, min_dist=d, min_d2=d * d, closest_pair=f"{i},{j}",
              angle_deg=equivalent_angle_deg(d, n, metric))
        rec = catalog.lookup(m, n, packing.N, metric)
        if rec is not None:
            status, delta = catalog.verify_against_record(packing)
            _emit(out, record=rec.value, record_status=status, record_delta=delta)
    _emit(out, valid=True)
    if args.hist is not None and packing.N >= 2:
        D = pairwise_distances(packing)
        vals = D[np.triu_indices(packing.N, 1)]
        counts, edges = np.histogram(vals, bins=50)
        centers = 0.5 * (edges[:-1] + edges[1:])
        lines = "".join(f"{fmt(c)}\t{k}\n" for c, k in zip(centers, counts))
        _write_or_print(lines, args.hist, out)
    return EXIT_OK


def cmd_bound(args, out):
    m, n, N = args.m, args.n, args.N
    kind, val = bounds.governing_bound(m, n, N)
    _emit(out,
          simplex_bound=bounds.simplex_bound(m, n, N),
          orthoplex_bound=bounds.orthoplex_bound(m, n),
          max_simplex_N=bounds.max_simplex_N(m),
          max_orthoplex_N=bounds.max_orthoplex_N(m),
          governing=kind,
          governing_bound=val)
    return EXIT_OK


def _load(path) -> Packing:
    try:
        return gpack.loads(_read_text(path))
    except GpackFormatError:
        raise
    except GrassError as exc:
        raise GpackFormatError(str(exc)) from exc


def cmd_certify(args, out):
    packing = _load(args.file)
    report = bounds.certify(packing, args.tol)
    out.write("".join(line + "\n" for line in report.lines()))
    return EXIT_OK


def cmd_clifford(args, out):
    spaces = clifford.theorem3_exact(args.i, args.k)
    packing = clifford.to_packing(spaces)
    d2 = clifford.exact_min_chordal_sq(spaces)
    comments = [f"clifford orbit i={args.i} k={args.k}: exact projections, min d_c^2 = {d2}"]
    _write_or_print(gpack.dumps(packing, comments), args.out, out)
    if args.out:
        _emit(out, N=len(spaces), m=packing.m, n=packing.n, exact_min_d2=str(d2))
    return EXIT_OK


def cmd_binocular(args, out):
    if args.action == "to-pairs":
        packing = _load(args.file)
        pairs = binocular.to_pairs(packing)
        _write_or_print(gpack.dumps_pairs(pairs), args.out, out)
    else:
        data = gpack.parse_pairs(_read_text(args.file))
        pairs = [binocular.BinocularPair.normalized(row[:3], row[3:]) for row in data]
        packing = binocular.BinocularCode(tuple(pairs)).to_packing(args.metric)
        _write_or_print(gpack.dumps(packing), args.out, out)
    return EXIT_OK


def cmd_embed(args, out):
    packing = _load(args.file)
    radius_sq = packing.n * (packing.m - packing.n) / packing.m
    resid = max(abs(float(projection(P).embed_vec @ projection(P).embed_vec) - radius_sq) for P in packing)
    _emit(out, embedding_dimension=embedding_dimension(packing) if packing.N >= 2 else 0,
          max_dimension=packing.m * (packing.m + 1) // 2 - 1,
          sphere_radius_sq=radius_sq, sphere_residual=resid)
    return EXIT_OK


def cmd_catalog(args, out):
    if args.action == "dump":
        out.write(catalog.dump())
        return EXIT_OK
    if None in (args.m, args.n, args.N):
        raise UsageError("catalog lookup needs --m, --n and --N")
    rec = catalog.lookup(args.m, args.n, args.N, args.metric)
    if rec is None:
        _emit(out, found=False)
        return EXIT_FAIL
    _emit(out, found=True, m=rec.m, n=rec.n, N=rec.N, metric=rec.metric, value=rec.value,
          unit=rec.unit, source=rec.source, proven_optimal=rec.proven_optimal)
    if rec.construction:
        _emit(out, construction=rec.construction)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grasspack", description="Packings in Grassmannian spaces G(m,n).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    o = sub.add_parser("optimize", help="search for a packing with large minimal distance")
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--N", type=int, required=True)
    o.add_argument("--metric", choices=METRICS, default="chordal")
    o.add_argument("--starts", type=int, default=50)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--target", type=float)
    o.add_argument("--max-iters", type=int)
    o.add_argument("--workers", type=int, default=1)
    o.add_argument("--out")
    o.set_defaults(func=cmd_optimize)

    v = sub.add_parser("verify", help="recompute the minimal distance and check a .gpack file")
    v.add_argument("file")
    v.add_argument("--hist", nargs="?", const="", default=None,
                   help="emit a 50-bin pairwise-distance histogram (to FILE if given)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bound", help="Rankin simplex and orthoplex bounds")
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--N", type=int, required=True)
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("certify", help="compare a packing with the governing bound")
    c.add_argument("file")
    c.add_argument("--tol", type=float, default=bounds.DEFAULT_TOL)
    c.set_defaults(func=cmd_certify)

    cl = sub.add_parser("clifford", help="Clifford-group orbit packing in G(2^i, 2^k)")
    cl.add_argument("--i", type=int, required=True)
    cl.add_argument("--k", type=int, required=True)
    cl.add_argument("--out")
    cl.set_defaults(func=cmd_clifford)

    bi = sub.add_parser("binocular", help="convert between planes in R^4 and binocular pairs")
    bi.add_argument("action", choices=("to-pairs", "to-planes"))
    bi.add_argument("file")
    bi.add_argument("--metric", choices=METRICS, default="chordal")
    bi.add_argument("--out")
    bi.set_defaults(func=cmd_binocular)

    e = sub.add_parser("embed", help="embedding dimension and sphere residual")
    e.add_argument("file")
    e.set_defaults(func=cmd_embed)

    ca = sub.add_parser("catalog", help="record tables")
    ca.add_argument("action", choices=("dump", "lookup"))
    ca.add_argument("--m", type=int)
    ca.add_argument("--n", type=int)
    ca.add_argument("--N", type=int)
    ca.add_argument("--metric", choices=METRICS + ("angle",), default="chordal")
    ca.set_defaults(func=cmd_catalog)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"grasspack: usage error: {exc}\n")
        return EXIT_USAGE
    except (GpackFormatError, GrassError) as exc:
        err.write(f"grasspack: {exc}\n")
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
