import itertools
import random

import numpy as np
import pytest

from spechtvertex import gf
from spechtvertex.brauer import (
    Caps,
    GroupAction,
    brauer_dim,
    fixed_space,
    is_fixed,
    lemma31_check,
    relative_trace,
    trace_image,
    trace_subspace,
    trace_subspace_all_proper,
    vertex_certificate,
)
from spechtvertex.endo import DECOMPOSABLE, INDECOMPOSABLE
from spechtvertex.perms import Perm, all_subgroups, subgroup, sylow_p
from spechtvertex.specht import rep_matrix
from spechtvertex.young import Partition, partitions_of, splitting_context, splitting_partitions, t_star


def P(n, text):
    return Perm.parse(text, n)


def brute_fixed(lam, p, Q):
    """All vectors fixed by every element of Q, by enumeration of GF(p)^d."""
    mats = [np.array(rep_matrix(lam, g) % p, dtype=np.int64) for g in Q.elements()]
    d = mats[0].shape[0]
    out = []
    for v in itertools.product(range(p), repeat=d):
        v = np.array(v, dtype=np.int64)
        if all(np.array_equal(v.dot(m) % p, v) for m in mats):
            out.append(v)
    return out


def brute_trace(lam, p, R, Q):
    """Tr_R^Q over all R-fixed vectors, with coset representatives found by enumeration."""
    reps, seen = [], set()
    Rel = R.elements()
    for g in Q.elements():
        coset = frozenset(r * g for r in Rel)
        if coset not in seen:
            seen.add(coset)
            reps.append(g)
    T = sum(np.array(rep_matrix(lam, g), dtype=np.int64) for g in reps) % p
    return {tuple(v.dot(T) % p) for v in brute_fixed(lam, p, R)}


CASES = [
    (Partition((2, 1)), 3, [P(3, "(1,2,3)")]),
    (Partition((2, 1)), 2, [P(3, "(1,2)")]),
    (Partition((3, 1)), 2, [P(4, "(1,2)(3,4)"), P(4, "(1,3)(2,4)")]),
    (Partition((2, 2)), 2, [P(4, "(1,2)"), P(4, "(3,4)")]),
    (Partition((3, 2)), 2, [P(5, "(1,2)"), P(5, "(3,4)")]),
    (Partition((3, 1, 1)), 3, [P(5, "(1,2,3)")]),
    (Partition((2, 2, 1)), 2, [P(5, "(1,2)(3,4)"), P(5, "(1,3)(2,4)")]),
]


@pytest.mark.parametrize("lam, p, gens", CASES, ids=lambda x: str(x))
def test_fixed_space_oracle(lam, p, gens):
    Q = subgroup(lam.n, gens)
    A = GroupAction(lam, p)
    V = fixed_space(A, Q)
    brute = brute_fixed(lam, p, Q)
    assert p**V.dim == len(brute)
    assert all(v in V for v in brute)


def test_fixed_space_two_one():
    A = GroupAction(Partition((2, 1)), 3)
    V = fixed_space(A, subgroup(3, [P(3, "(1,2,3)")]))
    assert V.dim == 1 and V.basis.tolist() == [[1, 1]]


@pytest.mark.parametrize("lam, p, gens", CASES, ids=lambda x: str(x))
def test_trace_oracles(lam, p, gens):
    Q = subgroup(lam.n, gens)
    A = GroupAction(lam, p)
    VQ = fixed_space(A, Q)
    subs = all_subgroups(Q)
    for R in subs:
        T = trace_image(A, R, Q)
        assert T <= VQ
        brute = brute_trace(lam, p, R, Q)
        assert {tuple(v) for v in brute} <= {tuple(v) for v in itertools.product(range(p), repeat=A.dim) if list(v) in T}
        assert p**T.dim == len(brute)
    assert trace_subspace(A, Q) == trace_subspace_all_proper(A, Q)
    assert brauer_dim(A, Q) == VQ.dim - trace_subspace(A, Q).dim


@pytest.mark.parametrize("lam, p, gens", CASES, ids=lambda x: str(x))
def test_representative_independence_and_transitivity(lam, p, gens):
    Q = subgroup(lam.n, gens)
    A = GroupAction(lam, p)
    subs = all_subgroups(Q)
    rng = random.Random(3)
    for S in subs:
        for v in fixed_space(A, S).basis:
            ref = relative_trace(A, v, S, Q)
            assert np.array_equal(relative_trace(A, v, S, Q, rng), ref)
            for R in subs:
                if S.is_subgroup_of(R) and R.is_subgroup_of(Q):
                    two_step = relative_trace(A, relative_trace(A, v, S, R), R, Q)
                    assert np.array_equal(two_step, ref)


def test_relative_trace_rejects_unfixed():
    A = GroupAction(Partition((2, 1)), 3)
    Q = subgroup(3, [P(3, "(1,2,3)")])
    with pytest.raises(ValueError):
        relative_trace(A, np.array([1, 0]), Q, Q)
    assert not is_fixed(A, np.array([1, 0]), Q)


def test_trace_subspace_requires_p_group():
    A = GroupAction(Partition((2, 1)), 3)
    with pytest.raises(ValueError):
        trace_subspace(A, subgroup(3, [P(3, "(1,2)")]))


def test_all_matrices_match_direct():
    A = GroupAction(Partition((3, 1, 1)), 2)
    Q = sylow_p(subgroup(5, [P(5, "(1,2,3,4,5)"), P(5, "(1,2)")]), 2)
    for g, m in A.all_matrices(Q).items():
        assert np.array_equal(m, np.array(rep_matrix(A.lam, g) % 2, dtype=np.int64))


class TestLemma:
    def test_strategies_agree(self):
        for n in range(2, 8):
            for lam in partitions_of(n):
                t = t_star(lam)
                for ctx in splitting_partitions(lam):
                    for p in (2, 3, 5):
                        r = lemma31_check(ctx, t, p, strategy="both")
                        assert r.ok and r.structural and r.expansion

    def test_shape_6633_structural(self, shape_6633):
        lam, t = shape_6633
        ctx = splitting_context(lam, Partition((3,) * 6))
        r = lemma31_check(ctx, t, 3, strategy="structural")
        assert r.ok and r.expansion is None

    def test_bad_strategy(self):
        ctx = splitting_partitions(Partition((2, 1)))[0]
        with pytest.raises(ValueError):
            lemma31_check(ctx, t_star(ctx.lam), 2, strategy="magic")


class TestCertificate:
    def test_three_one_one(self):
        ctx = splitting_context(Partition((3, 1, 1)), Partition((1, 1)))
        c = vertex_certificate(ctx, 2)
        assert c.group_type == "S_2×S_2"
        assert c.sylow_order == 4
        assert c.lemma31.ok and c.fixed_ok and c.not_trace_ok and c.brauer_dim >= 1
        assert c.verdict == INDECOMPOSABLE and c.claims_vertex_bound

    def test_decomposable_case_makes_no_claim(self):
        ctx = splitting_partitions(Partition((5, 1, 1)))[0]
        c = vertex_certificate(ctx, 2)
        assert c.verdict == DECOMPOSABLE and not c.claims_vertex_bound
        assert any("no vertex statement" in note for note in c.notes)

    def test_structural_only(self, shape_5522):
        lam, _ = shape_5522
        c = vertex_certificate(splitting_partitions(lam)[1], 3)
        assert c.structural_only and c.fixed_ok is None and c.sylow_order == 9
        assert c.to_json()["claims_vertex_bound"] is False

    def test_caps(self):
        ctx = splitting_partitions(Partition((3, 2)))[0]
        c = vertex_certificate(ctx, 2, Caps(dim=3))
        assert c.structural_only
        with pytest.raises(ValueError):
            vertex_certificate(ctx, 4)

    def test_json_timings_optional(self):
        ctx = splitting_partitions(Partition((2, 1)))[0]
        c = vertex_certificate(ctx, 2)
        assert "timings" not in c.to_json()
        assert set(c.to_json(with_timings=True)["timings"]) >= {"groups"}


@pytest.mark.parametrize("lam, p, gens", CASES, ids=lambda x: str(x))
def test_trace_inside_orbit_sum_span(lam, p, gens):
    """Tr^Q lies in the span of e_s (1 + g + ... + g^(p-1)) over basis vectors e_s and g in Q."""
    Q = subgroup(lam.n, gens)
    A = GroupAction(lam, p)
    mats = A.all_matrices(Q)
    sums = []
    for g, m in mats.items():
        if g.is_identity():
            continue
        S = sum(gf.matpow(m, i, p) for i in range(p)) % p
        sums.extend(S)
    span = gf.Subspace.span(sums, p, A.dim)
    assert trace_subspace(A, Q) <= span
