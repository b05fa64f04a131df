"""Run configuration, the certificate pipeline over a set of splitting partitions, and rendering."""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .brauer import Caps, VertexCertificate, vertex_certificate
from .endo import INDECOMPOSABLE
from .perms import PermGroup, h_group, is_prime, l_group, p_part
from .young import Partition, SplittingContext, run_decomposition, splitting_context, splitting_partitions, t_star

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_INCONSISTENT = 4

REPORT_SCHEMA_VERSION = 1
GROUP_COMPARE_CAP = 10**5


@dataclass
class RunConfig:
    lam: Partition
    p: int
    mu_selection: str | list[Partition] = "all"  # "all", "empty", or explicit list
    caps: Caps = field(default_factory=Caps)
    seed: int = 0
    fmt: str = "text"
    output: str | None = None
    timings: bool = False
    jobs: int = 1

    def validate(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not self.lam.parts:
            raise ValueError("lambda must be a nonempty partition")
        for cap in (self.caps.elements, self.caps.terms, self.caps.dim, self.caps.lemma_terms):
            if cap <= 0:
                raise ValueError("caps must be positive")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        self.contexts()

    def contexts(self) -> list[SplittingContext]:
        """Selected splitting contexts; the empty splitting partition is always included first."""
        all_ctx = splitting_partitions(self.lam)
        if self.mu_selection == "all":
            return all_ctx
        if self.mu_selection == "empty":
            return all_ctx[:1]
        chosen = [splitting_context(self.lam, mu) for mu in self.mu_selection]
        out = [all_ctx[0]] + [c for c in chosen if c.mu.parts]
        seen, uniq = set(), []
        for c in out:
            if c.mu not in seen:
                seen.add(c.mu)
                uniq.append(c)
        return uniq


def hook_note(ctx: SplittingContext, p: int) -> str | None:
    """Caveat for hook shapes with mu a column of ones."""
    lam = ctx.lam
    runs = run_decomposition(lam)
    if len(runs) != 2 or runs[1][0] != 1 or ctx.mu != Partition((1,) * runs[1][1]):
        return None
    n, k = lam.n, runs[1][1]
    if n % p:
        return f"hook shape with p ∤ n: the bound Sylow_p(S_{k}×S_{n - k - 1}) is attained by the vertex"
    return f"hook shape with p | n = {n}: the bound is reported without an attainment claim"


@dataclass
class Report:
    lam: Partition
    p: int
    seed: int
    h_type: str
    h_order: int
    h_sylow: int
    certificates: list[VertexCertificate]
    consistency_errors: list[str] = field(default_factory=list)

    def improvement(self, cert: VertexCertificate) -> bool:
        return cert.sylow_order > self.h_sylow

    @property
    def partial(self) -> bool:
        return any(c.structural_only for c in self.certificates)

    @property
    def exit_code(self) -> int:
        if self.consistency_errors:
            return EXIT_INCONSISTENT
        if self.partial:
            return EXIT_CAP
        return EXIT_OK

    def to_json(self, with_timings: bool = False) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "stamp": {"package": "spechtvertex", "version": __version__,
                      "python": f"{sys.version_info.major}.{sys.version_info.minor}"},
            "lambda": self.lam.to_json(),
            "p": self.p,
            "seed": self.seed,
            "h_group": {"type": self.h_type, "order": self.h_order, "sylow_order": self.h_sylow},
            "comparison": [
                {
                    "mu": c.mu.to_json(),
                    "group_type": c.group_type,
                    "group_order": c.group_order,
                    "sylow_order": c.sylow_order,
                    "improvement": self.improvement(c),
                }
                for c in self.certificates
            ],
            "certificates": [c.to_json(with_timings) for c in self.certificates],
            "consistency_errors": self.consistency_errors,
            "exit_code": self.exit_code,
        }

    def to_text(self) -> str:
        lines = [
            f"Specht module S^{self.lam.compact()} over GF({self.p})",
            f"H(t*) ≅ {self.h_type}, |H|={self.h_order}, Sylow_{self.p} order {self.h_sylow}",
            "",
            f"{'mu':<14}{'L_mu(t*)':<18}{'|L|':>8}{'Sylow':>8}  {'improves':<9}{'brauer_dim':>11}  verdict",
        ]
        for c in self.certificates:
            bd = "-" if c.brauer_dim is None else str(c.brauer_dim)
            lines.append(
                f"{c.mu.compact():<14}{c.group_type:<18}{c.group_order:>8}{c.sylow_order:>8}  "
                f"{'yes' if self.improvement(c) else 'no':<9}{bd:>11}  {c.verdict or 'structural-only'}"
            )
        for c in self.certificates:
            lines.append("")
            lines.append(
                f"mu={c.mu.compact()}: {c.group_type}, |G|={c.group_order}, Sylow_{c.p} order {c.sylow_order}"
            )
            lines.append("  P = <" + ", ".join(c.generators or ["()"]) + ">")
            lemma = "ok" if c.lemma31.ok else f"FAILED ({c.lemma31.counterexample})"
            exp = {True: "ok", False: "failed", None: "skipped"}[c.lemma31.expansion]
            lines.append(f"  e_t* fixed by P: structural {lemma}, expansion {exp}")
            if c.structural_only:
                lines.append("  [structural-only] " + "; ".join(c.notes))
                continue
            lines.append(
                f"  dim V^P={c.fixed_dim}, dim Tr^P={c.trace_dim}, e_t* in V^P: {c.fixed_ok}, "
                f"e_t* outside Tr^P: {c.not_trace_ok}"
            )
            lines.append(f"  indecomposability: {c.verdict} ({c.verdict_method})")
            status = "P lies in a vertex of S^lambda" if c.claims_vertex_bound else "no vertex claim"
            lines.append(f"  => {status}")
            for note in c.notes:
                lines.append(f"  note: {note}")
        if self.consistency_errors:
            lines.append("")
            lines.append("CONSISTENCY FAILURES:")
            lines.extend("  " + e for e in self.consistency_errors)
        return "\n".join(lines) + "\n"


def dumps_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _certify(args: tuple[SplittingContext, int, Caps, int]) -> VertexCertificate:
    ctx, p, caps, seed = args
    return vertex_certificate(ctx, p, caps, seed)


def certify_all(tasks: Sequence[tuple[SplittingContext, int, Caps, int]], jobs: int = 1) -> list[VertexCertificate]:
    """Certificates for each task, in task order regardless of ``jobs``."""
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_certify, tasks, chunksize=4))
    return [_certify(t) for t in tasks]


def same_group(G: PermGroup, H: PermGroup, cap: int) -> bool:
    """Element-set equality when enumerable, otherwise equality of the block factorisations."""
    if G.order() != H.order():
        return False
    if G.order() <= cap:
        return G == H
    return G.factors is not None and H.factors is not None and (
        sorted(f.blocks for f in G.factors) == sorted(f.blocks for f in H.factors)
    )


def consistency_errors(cert: VertexCertificate, ctx: SplittingContext) -> list[str]:
    tag = f"lambda={cert.lam} p={cert.p} mu={cert.mu}"
    errs = []
    if not cert.lemma31.ok:
        errs.append(f"{tag}: e_t* not fixed by P ({cert.lemma31.counterexample})")
    if cert.fixed_ok is False:
        errs.append(f"{tag}: e_t* outside the fixed space")
    if cert.verdict == INDECOMPOSABLE and (cert.not_trace_ok is False or (cert.brauer_dim or 0) < 1):
        errs.append(f"{tag}: indecomposable but e_t* lies in the trace subspace")
    if cert.not_trace_ok and cert.brauer_dim is not None and cert.brauer_dim < 1:
        errs.append(f"{tag}: e_t* outside the trace yet the Brauer quotient vanishes")
    if not ctx.mu.parts:
        ts = t_star(ctx.lam)
        if not same_group(l_group(ctx, ts), h_group(ts), GROUP_COMPARE_CAP):
            errs.append(f"{tag}: group for the empty splitting partition differs from H(t*)")
    return errs


def run(config: RunConfig) -> Report:
    config.validate()
    ctxs = config.contexts()
    tasks = [(ctx, config.p, config.caps, config.seed) for ctx in ctxs]
    certs = certify_all(tasks, config.jobs)
    H = h_group(t_star(config.lam))
    report = Report(config.lam, config.p, config.seed, H.abstract_type(), H.order(),
                    p_part(H.order(), config.p), certs)
    for ctx, cert in zip(ctxs, certs):
        note = hook_note(ctx, config.p)
        if note:
            cert.notes.append(note)
        report.consistency_errors.extend(consistency_errors(cert, ctx))
    return report
