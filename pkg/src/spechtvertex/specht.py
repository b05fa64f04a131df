"""Permutation modules M^lambda and Specht modules S^lambda with exact coefficients.

Vectors of M^lambda are sparse maps from tabloids to coefficients; a tabloid
is keyed by its row word (the row holding 1, the row holding 2, ...).  Vectors
of S^lambda are coordinate arrays in the standard polytabloid basis, ordered
as :func:`spechtvertex.young.standard_tableaux` lists them.

Matrices use row vectors: row ``i`` of ``rep_matrix(lam, g)`` holds the
coordinates of ``e_{s_i} g``, so ``rep_matrix(g h) = rep_matrix(g) @ rep_matrix(h)``.
"""

from __future__ import annotations

import heapq
import io
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Iterator

import numpy as np

from .perms import Perm
from .young import CapExceeded, Partition, Tableau, Tabloid, standard_tableaux

DEFAULT_TERM_CAP = 10**7


@dataclass(frozen=True)
class Ring:
    """The integers (``modulus=None``) or the prime field GF(modulus)."""

    modulus: int | None = None

    def __post_init__(self) -> None:
        from .perms import is_prime

        if self.modulus is not None and not is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")

    def reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus is not None else x

    def __str__(self) -> str:
        return "ZZ" if self.modulus is None else f"GF({self.modulus})"


ZZ = Ring()


def GF(p: int) -> Ring:
    return Ring(p)


def _sign_of_arrangement(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass
class TabloidVector:
    shape: Partition
    ring: Ring = ZZ
    terms: dict[tuple[int, ...], int] = field(default_factory=dict)

    def add_term(self, key: tuple[int, ...], c: int) -> None:
        c = self.ring.reduce(self.terms.get(key, 0) + c)
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def scaled(self, c: int) -> "TabloidVector":
        out = TabloidVector(self.shape, self.ring)
        for k, v in self.terms.items():
            out.add_term(k, c * v)
        return out

    def __add__(self, other: "TabloidVector") -> "TabloidVector":
        out = TabloidVector(self.shape, self.ring, dict(self.terms))
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "TabloidVector") -> "TabloidVector":
        return self + other.scaled(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TabloidVector):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def reduced(self, ring: Ring) -> "TabloidVector":
        out = TabloidVector(self.shape, ring)
        for k, v in self.terms.items():
            out.add_term(k, v)
        return out

    def tabloids(self) -> Iterator[tuple[Tabloid, int]]:
        for k in sorted(self.terms):
            yield Tabloid(self.shape, k), self.terms[k]

    def __len__(self) -> int:
        return len(self.terms)


def polytabloid(t: Tableau, ring: Ring = ZZ, cap: int = DEFAULT_TERM_CAP) -> TabloidVector:
    """Signed sum of ``{t} g`` over the column stabiliser of ``t``."""
    size = prod(factorial(len(c)) for c in t.columns)
    if size > cap:
        raise CapExceeded(f"polytabloid has {size} terms, cap is {cap}")
    base = list(t.row_of)
    per_column = []
    for col in t.columns:
        options = []
        for arr in permutations(range(len(col))):
            # entry col[arr[i]] moves into row i
            options.append((tuple((col[a], i) for i, a in enumerate(arr)), _sign_of_arrangement(arr)))
        per_column.append(options)
    out = TabloidVector(t.shape, ring)
    for choice in product(*per_column):
        word = base[:]
        sign = 1
        for placements, s in choice:
            sign *= s
            for x, r in placements:
                word[x - 1] = r
        out.add_term(tuple(word), sign)
    return out


def act_tabloid(v: TabloidVector, g: Perm) -> TabloidVector:
    """The image ``v g`` of a vector of M^lambda."""
    if g.degree != v.shape.n:
        raise ValueError(f"degree mismatch: {g.degree} vs {v.shape.n}")
    out = TabloidVector(v.shape, v.ring)
    img = g.images
    for key, c in v.terms.items():
        new = [0] * len(key)
        for x, r in enumerate(key):
            new[img[x]] = r
        out.terms[tuple(new)] = c
    return out


class SpechtModule:
    """The Specht module for one partition with its frozen standard basis."""

    def __init__(self, lam: Partition, syt_cap: int | None = None):
        self.lam = lam
        self.basis = standard_tableaux(lam) if syt_cap is None else standard_tableaux(lam, syt_cap)
        self.index = {t.row_of: i for i, t in enumerate(self.basis)}
        self._poly: dict[int, TabloidVector] = {}
        self._int_mats: dict[Perm, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def standard_polytabloid(self, i: int) -> TabloidVector:
        if i not in self._poly:
            self._poly[i] = polytabloid(self.basis[i])
        return self._poly[i]

    def expand(self, v: TabloidVector) -> list[int]:
        """Coordinates of ``v`` in the standard basis by greedy unitriangular elimination.

        The lexicographically least row word present is the most dominant
        tabloid; it must be the tabloid of a standard tableau ``s`` and its
        coefficient is the coordinate at ``s``.
        """
        if v.shape != self.lam:
            raise ValueError(f"shape mismatch: {v.shape} vs {self.lam}")
        ring = v.ring
        work = dict(v.terms)
        heap = list(work)
        heapq.heapify(heap)
        coords = [0] * self.dim
        while heap:
            key = heapq.heappop(heap)
            c = work.get(key, 0)
            if not c:
                continue
            i = self.index.get(key)
            if i is None:
                raise ValueError(
                    f"vector is not in the Specht module: leading tabloid {Tabloid(self.lam, key).rows()}"
                    " is not the tabloid of a standard tableau"
                )
            coords[i] = c
            for k2, c2 in self.standard_polytabloid(i).terms.items():
                nv = ring.reduce(work.get(k2, 0) - c * c2)
                if nv:
                    if k2 not in work:
                        heapq.heappush(heap, k2)
                    work[k2] = nv
                else:
                    work.pop(k2, None)
        return coords

    def integer_rep_matrix(self, g: Perm) -> np.ndarray:
        if g not in self._int_mats:
            rows = [self.expand(polytabloid(s.act(g))) for s in self.basis]
            self._int_mats[g] = np.array(rows, dtype=object).reshape(self.dim, self.dim)
        return self._int_mats[g]

    def rep_matrix(self, g: Perm, ring: Ring = ZZ) -> np.ndarray:
        """Integer matrices have dtype object (arbitrary precision); GF(p) ones int64."""
        m = self.integer_rep_matrix(g)
        if ring.modulus is None:
            return m.copy()
        return np.array([[int(x) % ring.modulus for x in row] for row in m],
                        dtype=np.int64).reshape(self.dim, self.dim)


@lru_cache(maxsize=None)
def specht_module(lam: Partition) -> SpechtModule:
    return SpechtModule(lam)


def expand_in_standard_basis(v: TabloidVector) -> list[int]:
    return specht_module(v.shape).expand(v)


def rep_matrix(lam: Partition, g: Perm, ring: Ring = ZZ, dim_cap: int | None = None) -> np.ndarray:
    S = specht_module(lam)
    if dim_cap is not None and S.dim > dim_cap:
        raise CapExceeded(f"dim S^{lam} = {S.dim} exceeds cap {dim_cap}")
    return S.rep_matrix(g, ring)


def specht_dimension(lam: Partition) -> int:
    return len(standard_tableaux(lam))


# -- export ------------------------------------------------------------------

def matrix_to_json(m: np.ndarray, ring: Ring) -> dict:
    return {
        "ring": str(ring),
        "dimension": int(m.shape[0]),
        "entries": [int(x) for x in np.asarray(m).reshape(-1)],
    }


def matrix_to_mtx(m: np.ndarray, ring: Ring) -> str:
    """Coordinate-format text in the Matrix Market layout (1-based indices)."""
    buf = io.StringIO()
    buf.write("%%MatrixMarket matrix coordinate integer general\n")
    buf.write(f"% ring {ring}\n")
    rows, cols = m.shape
    nz = [(i, j, int(m[i, j])) for i in range(rows) for j in range(cols) if int(m[i, j])]
    buf.write(f"{rows} {cols} {len(nz)}\n")
    for i, j, x in nz:
        buf.write(f"{i + 1} {j + 1} {x}\n")
    return buf.getvalue()
