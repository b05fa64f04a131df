"""Indecomposability of S^lambda over GF(p) through its endomorphism algebra.

The commutant of the matrices of ``(1 2)`` and ``(1 2 ... n)`` is the
endomorphism algebra.  A nontrivial idempotent in it splits the module; a
local algebra (only 0 and 1 idempotent) means the module is indecomposable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import gf
from .perms import Perm
from .specht import GF, specht_module
from .young import CapExceeded, Partition

DEFAULT_EXHAUSTIVE_CAP = 10**6
DEFAULT_RANDOM_SAMPLES = 200

INDECOMPOSABLE = "Indecomposable"
DECOMPOSABLE = "Decomposable"
INCONCLUSIVE = "Inconclusive"


@dataclass
class EndoAlgebra:
    p: int
    dim_module: int
    basis: list[np.ndarray]
    generators: list[np.ndarray] = field(default_factory=list)

    @property
    def dim_endo(self) -> int:
        return len(self.basis)

    def _flat(self) -> np.ndarray:
        return np.array([b.reshape(-1) for b in self.basis], dtype=np.int64)

    def coordinates(self, mats: Sequence[np.ndarray]) -> np.ndarray:
        """Coordinates of each matrix in ``mats`` w.r.t. the basis; ValueError if outside the span."""
        flat = self._flat()
        _, cols = gf.rref(flat, self.p)
        sub = flat[:, cols]
        inv = gf.inverse(sub, self.p)
        Y = np.array([np.asarray(m).reshape(-1) for m in mats], dtype=np.int64) % self.p
        C = gf.matmul(Y[:, cols], inv, self.p)
        if not np.array_equal(gf.matmul(C, flat, self.p), Y):
            raise ValueError("matrix is not in the span of the endomorphism basis")
        return C

    def structure_constants(self) -> np.ndarray:
        """``c[i, j, k]`` with ``B_i B_j = sum_k c[i, j, k] B_k``."""
        m = self.dim_endo
        prods = [gf.matmul(a, b, self.p) for a in self.basis for b in self.basis]
        return self.coordinates(prods).reshape(m, m, m)

    def element(self, coeffs: Sequence[int]) -> np.ndarray:
        out = np.zeros((self.dim_module, self.dim_module), dtype=np.int64)
        for c, b in zip(coeffs, self.basis):
            out = (out + int(c) * b) % self.p
        return out


@dataclass
class Verdict:
    kind: str
    method: str
    witness: np.ndarray | None = None

    def __str__(self) -> str:
        return self.kind

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "method": self.method,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


def _commutant_kron(mats: Sequence[np.ndarray], p: int, d: int) -> list[np.ndarray]:
    eye = np.eye(d, dtype=np.int64)
    rows = [np.kron(eye, a.T) - np.kron(a, eye) for a in mats]
    if not rows:
        return [eye]
    ns = gf.nullspace(np.vstack(rows) % p, p)
    return [v.reshape(d, d) for v in ns]


def _commutant_cyclic(mats: Sequence[np.ndarray], p: int, v0: np.ndarray) -> list[np.ndarray] | None:
    """Commutant of a cyclic module generated by ``v0``; None if ``v0`` does not generate.

    An endomorphism X is fixed by ``w = v0 X``; the admissible ``w`` are those
    respecting every relation among the spun vectors ``v0 * word``.
    """
    d = v0.shape[0]
    vecs = [v0 % p]
    words = [np.eye(d, dtype=np.int64)]
    i = 0
    while i < len(vecs) and len(vecs) < d:
        for s in mats:
            w = gf.matmul(vecs[i], s, p)
            if gf.rank(np.vstack(vecs + [w]), p) > len(vecs):
                vecs.append(w)
                words.append(gf.matmul(words[i], s, p))
        i += 1
    if len(vecs) < d:
        return None
    B = np.array(vecs, dtype=np.int64)
    Binv = gf.inverse(B, p)
    blocks = []
    for word in words:
        for s in mats:
            c = gf.matmul(gf.matmul(vecs[0], gf.matmul(word, s, p), p), Binv, p)
            rel = gf.matmul(word, s, p)
            for j, cj in enumerate(c):
                if cj:
                    rel = (rel - int(cj) * words[j]) % p
            blocks.append(rel)
    sols = gf.left_nullspace(np.hstack(blocks), p)
    basis = []
    for w in sols:
        W = np.array([gf.matmul(w, word, p) for word in words], dtype=np.int64)
        basis.append(gf.matmul(Binv, W, p))
    return basis


def commutant(mats: Sequence[np.ndarray], p: int, cyclic_vector: np.ndarray | None = None) -> EndoAlgebra:
    """Basis of ``{X : X A = A X for all A in mats}`` over GF(p)."""
    mats = [gf.as_mod(a, p) for a in mats]
    d = mats[0].shape[0] if mats else (0 if cyclic_vector is None else len(cyclic_vector))
    basis = None
    if cyclic_vector is not None and mats:
        basis = _commutant_cyclic(mats, p, gf.as_mod(cyclic_vector, p))
    if basis is None:
        basis = _commutant_kron(mats, p, d)
    for X in basis:
        for A in mats:
            if not np.array_equal(gf.matmul(X, A, p), gf.matmul(A, X, p)):  # pragma: no cover
                raise AssertionError("commutant basis element fails to commute")
    return EndoAlgebra(p, d, basis, list(mats))


def endomorphism_basis(lam: Partition, p: int, dim_cap: int | None = None) -> EndoAlgebra:
    S = specht_module(lam)
    if dim_cap is not None and S.dim > dim_cap:
        raise CapExceeded(f"dim S^{lam} = {S.dim} exceeds cap {dim_cap}")
    n = lam.n
    gens = []
    if n >= 2:
        gens = [Perm.from_cycles(n, [(1, 2)]), Perm.from_cycles(n, [tuple(range(1, n + 1))])]
    mats = [S.rep_matrix(g, GF(p)) for g in gens]
    v0 = np.zeros(S.dim, dtype=np.int64)
    v0[0] = 1  # e_{t*} generates S^lambda
    if not mats:
        return EndoAlgebra(p, S.dim, [np.eye(S.dim, dtype=np.int64)], [])
    return commutant(mats, p, cyclic_vector=v0)


def _is_witness(E: EndoAlgebra, e: np.ndarray) -> bool:
    d = E.dim_module
    p = E.p
    if not np.array_equal(gf.matmul(e, e, p), e):
        return False
    if not e.any() or np.array_equal(e, np.eye(d, dtype=np.int64)):
        return False
    return all(np.array_equal(gf.matmul(e, A, p), gf.matmul(A, e, p)) for A in E.generators)


def _exhaustive(E: EndoAlgebra) -> Verdict:
    p, m = E.p, E.dim_endo
    c = E.structure_constants()
    ident = E.coordinates([np.eye(E.dim_module, dtype=np.int64)])[0]
    total = p**m
    chunk = 1 << 15
    powers = p ** np.arange(m, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        A = (idx[:, None] // powers[None, :]) % p
        T = np.einsum("ni,ijk->njk", A, c) % p
        sq = np.einsum("nj,njk->nk", A, T) % p
        hits = np.nonzero(np.all(sq == A, axis=1))[0]
        for h in hits:
            a = A[h]
            if not a.any() or np.array_equal(a, ident):
                continue
            e = E.element(a)
            if _is_witness(E, e):
                return Verdict(DECOMPOSABLE, "exhaustive", e)
    return Verdict(INDECOMPOSABLE, "exhaustive")


def _fitting_projection(theta_k: np.ndarray, p: int) -> np.ndarray | None:
    d = theta_k.shape[0]
    image, _ = gf.rref(theta_k, p)
    kernel = gf.left_nullspace(theta_k, p)
    r = image.shape[0]
    if r in (0, d) or r + kernel.shape[0] != d:
        return None
    B = np.vstack([image, kernel])
    if gf.rank(B, p) < d:
        return None
    D = np.zeros((d, d), dtype=np.int64)
    D[:r, :r] = np.eye(r, dtype=np.int64)
    return gf.matmul(gf.matmul(gf.inverse(B, p), D, p), B, p)


def _randomized(E: EndoAlgebra, seed: int, samples: int) -> Verdict:
    rng = random.Random(seed)
    p, d = E.p, E.dim_module
    for _ in range(samples):
        theta = E.element([rng.randrange(p) for _ in range(E.dim_endo)])
        e = _fitting_projection(gf.matpow(theta, d, p), p)
        if e is not None and _is_witness(E, e):
            return Verdict(DECOMPOSABLE, "randomized", e)
    return Verdict(INCONCLUSIVE, "randomized")


def indecomposability_verdict(
    E: EndoAlgebra,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    seed: int = 0,
    samples: int = DEFAULT_RANDOM_SAMPLES,
) -> Verdict:
    if E.dim_module == 0:
        return Verdict(INCONCLUSIVE, "trivial")
    if E.dim_endo == 1:
        return Verdict(INDECOMPOSABLE, "trivial")
    if E.p**E.dim_endo <= exhaustive_cap:
        return _exhaustive(E)
    return _randomized(E, seed, samples)


@lru_cache(maxsize=None)
def specht_verdict(lam: Partition, p: int, seed: int = 0, exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
                   dim_cap: int | None = None) -> Verdict:
    return indecomposability_verdict(endomorphism_basis(lam, p, dim_cap), exhaustive_cap, seed)
