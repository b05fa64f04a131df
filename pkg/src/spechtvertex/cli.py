"""Command-line front end.

Examples::

    spechtvertex --lambda 5,5,2,2,2,2 --p 3 --all-mu
    spechtvertex --lambda 3,1,1 --p 2 --mu 1,1 --json cert.json
    spechtvertex --lambda 2,1 --p 3 --verdict
    spechtvertex --lambda 2,1 --p 3 --matrix "(1,2,3)" --matrix-out g.mtx
    spechtvertex --corpus --json corpus.json
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .brauer import DEFAULT_DIM_CAP, Caps
from .perms import DEFAULT_ELEMENT_CAP, Perm
from .report import EXIT_CAP, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK, RunConfig, dumps_json, run
from .specht import DEFAULT_TERM_CAP, GF, ZZ, matrix_to_json, matrix_to_mtx, rep_matrix
from .young import CapExceeded, Partition


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spechtvertex",
        description="Certify vertex lower bounds for Specht modules over GF(p).",
    )
    ap.add_argument("--lambda", dest="lam", help='partition, e.g. "5,5,2,2,2,2"')
    ap.add_argument("--p", type=int, help="prime characteristic")
    sel = ap.add_mutually_exclusive_group()
    sel.add_argument("--mu", action="append", default=None,
                     help="splitting partition (repeatable); the empty one is always reported")
    sel.add_argument("--all-mu", action="store_true", help="every splitting partition (default)")
    sel.add_argument("--empty-mu", action="store_true", help="only the empty splitting partition")
    ap.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cap-elems", type=int, default=DEFAULT_ELEMENT_CAP,
                    help=f"largest group enumerated (default {DEFAULT_ELEMENT_CAP})")
    ap.add_argument("--cap-terms", type=int, default=DEFAULT_TERM_CAP,
                    help=f"largest polytabloid expanded (default {DEFAULT_TERM_CAP})")
    ap.add_argument("--cap-dim", type=int, default=DEFAULT_DIM_CAP,
                    help=f"largest Specht module dimension for linear algebra (default {DEFAULT_DIM_CAP})")
    ap.add_argument("--timings", action="store_true", help="include timings (breaks byte-identical output)")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for the certificate sweep")
    ap.add_argument("--corpus", action="store_true", help="run the regression corpus")
    ap.add_argument("--verdict", action="store_true", help="only report the indecomposability verdict")
    ap.add_argument("--matrix", metavar="PERM", help='export the matrix of a permutation, e.g. "(1,2,3)"')
    ap.add_argument("--matrix-out", metavar="PATH", help="matrix output (.json or Matrix Market text)")
    return ap


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _run_corpus(args) -> int:
    from .corpus import corpus

    caps = Caps(elements=args.cap_elems, terms=args.cap_terms, dim=args.cap_dim)
    res = corpus(seed=args.seed, jobs=args.jobs, caps=caps)
    sys.stdout.write(res.summary())
    if args.json:
        _emit(dumps_json(res.to_json()), args.json)
    return EXIT_OK if res.passed else EXIT_INCONSISTENT


def _run_verdict(lam: Partition, p: int, args) -> int:
    from .endo import endomorphism_basis, indecomposability_verdict

    E = endomorphism_basis(lam, p, args.cap_dim)
    v = indecomposability_verdict(E, seed=args.seed)
    data = {"lambda": lam.to_json(), "p": p, "dim_module": E.dim_module, "dim_endo": E.dim_endo,
            **v.to_json()}
    if args.json:
        _emit(dumps_json(data), args.json)
    if args.json != "-":
        print(f"S^{lam.compact()} over GF({p}): dim {E.dim_module}, dim End = {E.dim_endo}, "
              f"{v.kind} ({v.method})")
    return EXIT_OK


def _run_matrix(lam: Partition, p: int | None, args) -> int:
    ring = GF(p) if p else ZZ
    g = Perm.parse(args.matrix, lam.n)
    m = rep_matrix(lam, g, ring, args.cap_dim)
    out = args.matrix_out
    if out and out.endswith(".json"):
        _emit(dumps_json(matrix_to_json(m, ring)), out)
    else:
        _emit(matrix_to_mtx(m, ring), out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.corpus:
            return _run_corpus(args)
        if not args.lam:
            raise ValueError("--lambda is required")
        lam = Partition.parse(args.lam)
        if args.matrix:
            return _run_matrix(lam, args.p, args)
        if args.p is None:
            raise ValueError("--p is required")
        if args.verdict:
            return _run_verdict(lam, args.p, args)
        if args.mu:
            selection = [Partition.parse(m) for m in args.mu]
        else:
            selection = "empty" if args.empty_mu else "all"
        config = RunConfig(
            lam=lam, p=args.p, mu_selection=selection,
            caps=Caps(elements=args.cap_elems, terms=args.cap_terms, dim=args.cap_dim),
            seed=args.seed, fmt="json" if args.json else "text", output=args.json,
            timings=args.timings, jobs=args.jobs,
        )
        report = run(config)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.json:
        _emit(dumps_json(report.to_json(args.timings)), args.json)
    if args.json != "-":
        sys.stdout.write(report.to_text())
        sys.stdout.flush()
    if report.exit_code == EXIT_CAP:
        print("warning: caps exceeded; structural-only results emitted", file=sys.stderr)
    elif report.exit_code == EXIT_INCONSISTENT:
        print("error: internal consistency failure", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
