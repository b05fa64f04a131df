"""Exact linear algebra over GF(p) on int64 numpy arrays.

Entries are kept reduced to ``0..p-1``; products of two reduced entries fit
comfortably in int64 for any prime this package is meant for.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_mod(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    m = as_mod(a, p).copy()
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of the right null space ``{x : a x = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-r[j, f]) % p
    return basis


def left_nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : x a = 0}``."""
    return nullspace(np.asarray(a).T, p)


def inverse(a, p: int) -> np.ndarray:
    a = as_mod(a, p)
    d = a.shape[0]
    r, pivots = rref(np.hstack([a, np.eye(d, dtype=np.int64)]), p)
    if pivots[:d] != list(range(d)) or len(r) < d:
        raise ValueError("matrix is singular mod p")
    return r[:d, d:]


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def matpow(a, k: int, p: int) -> np.ndarray:
    a = as_mod(a, p)
    result = np.eye(a.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            result = matmul(result, a, p)
        a = matmul(a, a, p)
        k >>= 1
    return result


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^dim held in canonical reduced echelon form."""

    p: int
    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int) -> "Subspace":
        vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim)
        if vecs.shape[0] == 0:
            return cls.zero(p, ambient_dim)
        r, _ = rref(vecs, p)
        return cls(p, ambient_dim, r)

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(p, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64))

    @classmethod
    def whole(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(p, ambient_dim, np.eye(ambient_dim, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __contains__(self, v) -> bool:
        v = as_mod(v, self.p).reshape(1, self.ambient_dim)
        if not v.any():
            return True
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        return all(v in other for v in self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p, self.ambient_dim) == (other.p, other.ambient_dim) and np.array_equal(
            self.basis, other.basis
        )

    def to_json(self) -> dict:
        return {"p": self.p, "ambient_dim": self.ambient_dim, "basis": self.basis.tolist()}
