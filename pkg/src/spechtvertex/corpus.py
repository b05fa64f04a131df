"""Frozen regression corpus: worked examples, per-module invariants, and the certificate sweep."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial, prod

import numpy as np

from . import __version__, gf
from .brauer import (
    Caps,
    GroupAction,
    fixed_space,
    relative_trace,
    trace_subspace,
    trace_subspace_all_proper,
)
from .endo import DECOMPOSABLE, endomorphism_basis, indecomposability_verdict
from .perms import (
    Perm,
    column_stabilizer,
    h_group,
    l_group,
    p_part,
    row_stabilizer,
    sylow_p,
    u_group,
    z_group,
)
from .report import certify_all, consistency_errors
from .specht import polytabloid, specht_module
from .young import (
    Partition,
    column_standard_tableaux,
    dominance_leq,
    hook_length_count,
    partitions_of,
    row_straighten,
    run_decomposition,
    splitting_context,
    splitting_partitions,
    standard_tableaux,
    t_star,
)

SHAPE_5522 = Partition((5, 5, 2, 2, 2, 2))
SHAPE_6633 = Partition((6, 6, 6, 3, 3, 3, 3, 3, 3))


@dataclass
class CheckResult:
    module: str
    invariant: str
    passed: bool
    repro: str | None = None

    def to_json(self) -> dict:
        return {"module": self.module, "invariant": self.invariant, "passed": self.passed, "repro": self.repro}


@dataclass
class CorpusResult:
    checks: list[CheckResult] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def record(self, module: str, invariant: str, failures: list[str]) -> None:
        # the first failure is the smallest input since inputs are swept in increasing size
        self.checks.append(CheckResult(module, invariant, not failures, failures[0] if failures else None))

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "certificates": self.certificates,
        }

    def summary(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.module}: {c.invariant}"
                 + (f"  [repro: {c.repro}]" if c.repro else "") for c in self.checks]
        ok = sum(c.passed for c in self.checks)
        lines.append(f"{ok}/{len(self.checks)} checks passed; {len(self.certificates)} certificates")
        return "\n".join(lines) + "\n"


def _perm(n: int, text: str) -> Perm:
    return Perm.parse(text, n)


def worked_examples(res: CorpusResult) -> None:
    n = SHAPE_5522.n
    ts = t_star(SHAPE_5522)
    fails = []
    expected_h = {_perm(n, "(3,4,5)(8,9,10)"), _perm(n, "(3,4)(8,9)"),
                  _perm(n, "(1,2)(6,7)(11,12)(13,14)(15,16)(17,18)")}
    H = h_group(ts)
    if set(H.generators) != expected_h or H.order() != 12 or len(H.elements()) != 12:
        fails.append(f"h_group(t*({SHAPE_5522})) = {H.describe()}")
    res.record("perm_groups", "(5^2,2^4): H(t) generators and order 12", fails)

    fails = []
    ctx = splitting_context(SHAPE_5522, Partition((2, 2, 2, 2)))
    U, Z, L = u_group(ctx, ts), z_group(ctx, ts), l_group(ctx, ts)
    if set(U.generators) != {_perm(n, "(3,4,5)(8,9,10)"), _perm(n, "(3,4)(8,9)")}:
        fails.append(f"U = {U.describe()}")
    if set(Z.generators) != {_perm(n, "(11,13,15,17)(12,14,16,18)"), _perm(n, "(11,13)(12,14)")}:
        fails.append(f"Z = {Z.describe()}")
    if len(L.elements()) != 144 or L.abstract_type() != "S_3×S_4":
        fails.append(f"L = {L.describe()}")
    res.record("perm_groups", "(5^2,2^4), mu=(2^4): U, Z generators and |L| = 144", fails)

    fails = []
    n2 = SHAPE_6633.n
    ctx2 = splitting_context(SHAPE_6633, Partition((3,) * 6))
    P = sylow_p(l_group(ctx2, t_star(SHAPE_6633)), 3)
    elems = P.elements()
    wanted = [_perm(n2, "(4,5,6)(10,11,12)(16,17,18)"), _perm(n2, "(19,22,25)(20,23,26)(21,24,27)"),
              _perm(n2, "(28,31,34)(29,32,35)(30,33,36)")]
    abelian = all(a * b == b * a for a in P.generators for b in P.generators)
    exponent3 = all((g**3).is_identity() for g in elems)
    if len(elems) != 27 or not abelian or not exponent3 or not all(w in P for w in wanted):
        fails.append(f"Sylow_3 of L for {SHAPE_6633}, mu=(3^6): {P.describe()}")
    res.record("perm_groups", "(6^3,3^6), mu=(3^6): elementary abelian Sylow of order 27", fails)

    fails = []
    for n in range(3, 11):
        for k in range(1, n - 1):
            lam = Partition((n - k,) + (1,) * k)
            L = l_group(splitting_context(lam, Partition((1,) * k)), t_star(lam))
            if len(L.elements()) != factorial(k) * factorial(n - k - 1) or sorted(
                    f.m for f in L.factors) != sorted(m for m in (k, n - k - 1) if m > 1):
                fails.append(f"lambda={lam}")
    res.record("perm_groups", "hook shapes: L = S_k x S_(n-k-1) for n <= 10", fails)


def young_invariants(res: CorpusResult, max_n: int) -> None:
    count_fails, dom_fails, split_fails, straight_fails = [], [], [], []
    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            syt = standard_tableaux(lam)
            if len(syt) != hook_length_count(lam):
                count_fails.append(f"lambda={lam}: {len(syt)} vs hook {hook_length_count(lam)}")
            top = t_star(lam)
            if syt[0] != top or not all(dominance_leq(s, top) for s in syt):
                dom_fails.append(f"lambda={lam}")
            ctxs = splitting_partitions(lam)
            if len(ctxs) != len(run_decomposition(lam)):
                split_fails.append(f"lambda={lam}")
            for s in syt:
                r = row_straighten(s)
                if r != s or row_straighten(r) != r:
                    straight_fails.append(f"lambda={lam}, t={s}")
    res.record("young_combinatorics", "#SYT equals hook length formula", count_fails)
    res.record("young_combinatorics", "t* is first and dominates every standard tableau", dom_fails)
    res.record("young_combinatorics", "one splitting partition per run", split_fails)
    res.record("young_combinatorics", "row straightening is idempotent", straight_fails)


def group_invariants(res: CorpusResult, max_n: int) -> None:
    order_fails, nest_fails, sylow_fails = [], [], []
    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            ts = t_star(lam)
            R, C, H = row_stabilizer(ts), column_stabilizer(ts), h_group(ts)
            for ctx in splitting_partitions(lam):
                U, Z, L = u_group(ctx, ts), z_group(ctx, ts), l_group(ctx, ts)
                closed = prod(factorial(c) for c in _multiplicities(ctx.eta.conjugate.parts)) * prod(
                    factorial(m) for m in ctx.run_multiplicities)
                if len(L.elements()) != closed or L.order() != U.order() * Z.order():
                    order_fails.append(f"lambda={lam}, mu={ctx.mu}")
                if not (U.is_subgroup_of(H) and H.is_subgroup_of(R) and Z.is_subgroup_of(C)
                        and not (U.support & Z.support)):
                    nest_fails.append(f"lambda={lam}, mu={ctx.mu}")
                for p in (2, 3):
                    P = sylow_p(L, p)
                    el = P.elements()
                    if len(el) != p_part(len(L.elements()), p) or not all(
                            p_part(g.order(), p) == g.order() for g in el) or not P.is_subgroup_of(L):
                        sylow_fails.append(f"lambda={lam}, mu={ctx.mu}, p={p}")
    res.record("perm_groups", "|L| matches closed form and |U||Z|", order_fails)
    res.record("perm_groups", "U <= H <= R(t), Z <= C(t), disjoint supports", nest_fails)
    res.record("perm_groups", "Sylow order is the p-part and elements have p-power order", sylow_fails)


def _multiplicities(parts) -> list[int]:
    out: dict[int, int] = {}
    for x in parts:
        out[x] = out.get(x, 0) + 1
    return list(out.values())


def specht_invariants(res: CorpusResult, max_n: int, rng: random.Random) -> None:
    rank_fails, tri_fails, rep_fails = [], [], []
    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            S = specht_module(lam)
            keys = sorted({k for i in range(S.dim) for k in S.standard_polytabloid(i).terms})
            pos = {k: j for j, k in enumerate(keys)}
            M = np.zeros((S.dim, len(keys)), dtype=object)
            for i in range(S.dim):
                for k, c in S.standard_polytabloid(i).terms.items():
                    M[i, pos[k]] = c
            for p in (2, 3, 5):
                if gf.rank(np.array(M % p, dtype=np.int64), p) != S.dim:
                    rank_fails.append(f"lambda={lam}, GF({p})")
            for v in column_standard_tableaux(lam):
                coords = S.expand(polytabloid(v))
                vb = row_straighten(v)
                lead = S.index[vb.row_of]
                if coords[lead] != 1 or any(c and not dominance_leq(S.basis[i], vb)
                                            for i, c in enumerate(coords)):
                    tri_fails.append(f"lambda={lam}, v={v}")
                    break
            for _ in range(5):
                g = Perm(tuple(rng.sample(range(n), n)))
                h = Perm(tuple(rng.sample(range(n), n)))
                lhs = S.rep_matrix(g).dot(S.rep_matrix(h))
                if not np.array_equal(lhs, S.rep_matrix(g * h)):
                    rep_fails.append(f"lambda={lam}, g={g}, h={h}")
                    break
    res.record("specht_modules", "standard polytabloids independent over GF(2), GF(3), GF(5)", rank_fails)
    res.record("specht_modules", "column-standard expansions are unitriangular", tri_fails)
    res.record("specht_modules", "rep_matrix is a homomorphism", rep_fails)


def brauer_invariants(res: CorpusResult, max_n: int, rng: random.Random) -> None:
    contain_fails, indep_fails, maxall_fails = [], [], []
    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            for p in (2, 3):
                action = GroupAction(lam, p)
                for ctx in splitting_partitions(lam):
                    P = sylow_p(l_group(ctx, t_star(lam)), p)
                    if P.order() > p**3:
                        continue
                    VP = fixed_space(action, P)
                    TP = trace_subspace(action, P)
                    if not TP <= VP:
                        contain_fails.append(f"lambda={lam}, p={p}, mu={ctx.mu}")
                    if TP != trace_subspace_all_proper(action, P):
                        maxall_fails.append(f"lambda={lam}, p={p}, mu={ctx.mu}")
                    R = _any_proper(P)
                    VR = fixed_space(action, R)
                    for v in VR.basis[:3]:
                        a = relative_trace(action, v, R, P, random.Random(rng.random()))
                        b = relative_trace(action, v, R, P, random.Random(rng.random()))
                        if not np.array_equal(a, b):
                            indep_fails.append(f"lambda={lam}, p={p}, mu={ctx.mu}")
                            break
    res.record("brauer_vertex", "trace subspace lies in the fixed space", contain_fails)
    res.record("brauer_vertex", "relative trace independent of coset representatives", indep_fails)
    res.record("brauer_vertex", "maximal-subgroup trace sum equals all-proper-subgroup sum", maxall_fails)


def _any_proper(P):
    from .perms import maximal_subgroups

    subs = maximal_subgroups(P, _prime_of(P.order())) if P.order() > 1 else []
    return subs[0] if subs else P


def _prime_of(order: int) -> int:
    d = 2
    while order % d:
        d += 1
    return d


def endo_invariants(res: CorpusResult, max_n: int, seed: int) -> None:
    fails = []
    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            for p in (2, 3):
                E = endomorphism_basis(lam, p)
                v = indecomposability_verdict(E, seed=seed)
                if v.kind == DECOMPOSABLE:
                    e = v.witness
                    ok = np.array_equal(gf.matmul(e, e, p), e) and all(
                        np.array_equal(gf.matmul(e, A, p), gf.matmul(A, e, p)) for A in E.generators)
                    if not ok:
                        fails.append(f"lambda={lam}, p={p}")
    res.record("endo_probe", "decomposable witnesses are commuting idempotents", fails)


def certificate_sweep(res: CorpusResult, max_n: int, seed: int, jobs: int, caps: Caps) -> None:
    tasks, ctxs = [], []
    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            for p in (2, 3):
                for ctx in splitting_partitions(lam):
                    tasks.append((ctx, p, caps, seed))
                    ctxs.append(ctx)
    certs = certify_all(tasks, jobs)
    fails = []
    for ctx, cert in zip(ctxs, certs):
        fails.extend(consistency_errors(cert, ctx))
        res.certificates.append(cert.to_json())
    res.record("brauer_vertex", f"certificate sweep over all lambda of n <= {max_n}, p in (2, 3)", fails)


def corpus(seed: int = 0, jobs: int = 1, max_n: int = 7, caps: Caps | None = None) -> CorpusResult:
    caps = caps or Caps()
    rng = random.Random(seed)
    res = CorpusResult(seed=seed)
    worked_examples(res)
    young_invariants(res, max_n + 3)
    group_invariants(res, max_n)
    specht_invariants(res, max_n, rng)
    brauer_invariants(res, max_n, rng)
    endo_invariants(res, max_n, seed)
    certificate_sweep(res, max_n, seed, jobs, caps)
    return res
