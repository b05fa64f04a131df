"""Permutations of {1..n} and the desk-scale groups built from tableaux.

Permutations act on the right: ``x(gh) = (xg)h``, so ``g * h`` applies ``g``
first.  Groups are stored as generators plus, where available, a structural
factorisation as a direct product of symmetric groups each permuting a set of
equal-size blocks "in parallel" (block i's j-th point goes to block k's j-th
point).  Element sets are enumerated lazily and only up to a cap.
"""

from __future__ import annotations

import random
import re
import threading
from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial, prod
from typing import Iterable, Sequence

from .young import CapExceeded, SplittingContext, Tableau, subtableau_u, subtableau_z

DEFAULT_ELEMENT_CAP = 10**6


@dataclass(frozen=True)
class Perm:
    """A permutation stored as the 0-based image tuple; the public API is 1-based."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Perm":
        """From the 1-based images of 1..n."""
        return cls(tuple(x - 1 for x in images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            if any(x < 1 or x > n for x in cyc):
                raise ValueError(f"cycle {cyc} leaves 1..{n}")
            if seen & set(cyc) or len(set(cyc)) != len(cyc):
                raise ValueError("cycles must be disjoint")
            seen |= set(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> "Perm":
        """Parse disjoint-cycle text such as ``"(3,4,5)(8,9,10)"``; ``"()"`` is the identity."""
        stripped = re.sub(r"\s+", "", text)
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))*", stripped):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [list(map(int, c.split(","))) for c in re.findall(r"\(([\d,]+)\)", stripped)]
        return cls.from_cycles(n, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1] + 1

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        o = other.images
        return Perm(tuple(o[i] for i in self.images))

    def __pow__(self, k: int) -> "Perm":
        result = Perm.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(x + 1 for x in cyc))
        return out

    @property
    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, j in enumerate(self.images) if i != j)

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({self})"

    def to_json(self) -> dict:
        return {"cycles": str(self), "images": [x + 1 for x in self.images]}


def transport(block_perm: Sequence[int], blocks: Sequence[Sequence[int]], n: int) -> Perm:
    """Lift a permutation of block indices (0-based image list) to the points of the blocks."""
    images = list(range(n))
    for i, j in enumerate(block_perm):
        for a, b in zip(blocks[i], blocks[j]):
            images[a - 1] = b - 1
    return Perm(tuple(images))


@dataclass(frozen=True)
class BlockFactor:
    """A symmetric group ``S_m`` permuting ``m`` equal-size blocks in parallel."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.blocks)

    def generators(self, n: int) -> list[Perm]:
        """The m-cycle on blocks and the swap of the first two blocks."""
        m = self.m
        if m < 2:
            return []
        swap = [1, 0] + list(range(2, m))
        if m == 2:
            return [transport(swap, self.blocks, n)]
        cycle = list(range(1, m)) + [0]
        return [transport(cycle, self.blocks, n), transport(swap, self.blocks, n)]


@dataclass(eq=False)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    factors: tuple[BlockFactor, ...] | None = None
    known_order: int | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _elements: tuple[Perm, ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.generators = tuple(g for g in self.generators if not g.is_identity())
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError("generator degree mismatch")

    @classmethod
    def from_factors(cls, degree: int, factors: Iterable[BlockFactor]) -> "PermGroup":
        factors = tuple(f for f in factors if f.m >= 2)
        gens = tuple(g for f in factors for g in f.generators(degree))
        return cls(degree, gens, factors)

    def order(self) -> int:
        if self.factors is not None:
            return prod(factorial(f.m) for f in self.factors)
        if self.known_order is not None:
            return self.known_order
        return len(self.elements())

    def abstract_type(self) -> str:
        """Description such as ``S_3×S_4``; ``1`` for the trivial group."""
        if self.factors is None:
            return f"order {self.order()}"
        if not self.factors:
            return "1"
        return "×".join(f"S_{f.m}" for f in self.factors)

    @property
    def support(self) -> frozenset[int]:
        return frozenset().union(*(g.support for g in self.generators))

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[Perm, ...]:
        """All elements, sorted by image tuple; raises CapExceeded past ``cap``."""
        with self._lock:
            if self._elements is None:
                bound = self.factors is not None or self.known_order is not None
                if bound and self.order() > cap:
                    raise CapExceeded(f"group of order {self.order()} exceeds cap {cap}")
                self._elements = tuple(sorted(_closure(self.degree, self.generators, cap),
                                              key=lambda g: g.images))
            elif len(self._elements) > cap:
                raise CapExceeded(f"group of order {len(self._elements)} exceeds cap {cap}")
            return self._elements

    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements())

    def __contains__(self, g: Perm) -> bool:
        return g in self.element_set()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.element_set() == other.element_set()

    def __hash__(self) -> int:
        return hash(self.element_set())

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def describe(self) -> str:
        gens = ", ".join(map(str, self.generators)) or "()"
        return f"<{gens}> ≅ {self.abstract_type()}, |G|={self.order()}"


def _closure(n: int, gens: Sequence[Perm], cap: int) -> set[Perm]:
    ident = Perm.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"group closure exceeds cap {cap}")
        frontier = nxt
    return seen


def subgroup(n: int, gens: Iterable[Perm]) -> PermGroup:
    return PermGroup(n, tuple(gens))


def enumerate_elements(G: PermGroup, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[Perm, ...]:
    return G.elements(cap)


# -- groups attached to a tableau --------------------------------------------

def _singleton_factors(parts: Iterable[Sequence[int]]) -> list[BlockFactor]:
    return [BlockFactor(tuple((x,) for x in part)) for part in parts]


def _adjacent_transpositions(n: int, parts: Iterable[Sequence[int]]) -> list[Perm]:
    return [Perm.from_cycles(n, [(a, b)]) for part in parts for a, b in zip(part, part[1:])]


def row_stabilizer(t: Tableau) -> PermGroup:
    n = t.n
    return PermGroup(n, tuple(_adjacent_transpositions(n, t.rows)),
                     tuple(f for f in _singleton_factors(t.rows) if f.m >= 2))


def column_stabilizer(t: Tableau) -> PermGroup:
    n = t.n
    return PermGroup(n, tuple(_adjacent_transpositions(n, t.columns)),
                     tuple(f for f in _singleton_factors(t.columns) if f.m >= 2))


def _equal_length_blocks(blocks: Sequence[tuple[int, ...]]) -> list[BlockFactor]:
    """Group blocks by length, shortest length first, each class in original order."""
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for b in blocks:
        by_len.setdefault(len(b), []).append(b)
    return [BlockFactor(tuple(by_len[k])) for k in sorted(by_len)]


def h_group(t: Tableau) -> PermGroup:
    """Row-stabilising group permuting equal-length columns of ``t`` as blocks."""
    return PermGroup.from_factors(t.n, _equal_length_blocks(t.columns))


def u_group(ctx: SplittingContext, t: Tableau, n: int | None = None) -> PermGroup:
    u = subtableau_u(ctx, t)
    return PermGroup.from_factors(n or t.n, _equal_length_blocks(u.columns))


def z_group(ctx: SplittingContext, t: Tableau, n: int | None = None) -> PermGroup:
    z = subtableau_z(ctx, t)
    return PermGroup.from_factors(n or t.n, _equal_length_blocks(z.rows))


def l_group(ctx: SplittingContext, t: Tableau) -> PermGroup:
    """Direct product of ``u_group`` and ``z_group`` (their supports are disjoint)."""
    U = u_group(ctx, t)
    Z = z_group(ctx, t)
    return PermGroup.from_factors(t.n, U.factors + Z.factors)


# -- Sylow subgroups ---------------------------------------------------------

def p_part(order: int, p: int) -> int:
    out = 1
    while order % p == 0:
        order //= p
        out *= p
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _sylow_symmetric_block_perms(m: int, p: int) -> list[list[int]]:
    """Generators (as 0-based image lists on m points) of a Sylow p-subgroup of S_m.

    m is split by its base-p digits into chunks of size p^k; each chunk carries
    the iterated wreath product C_p wr ... wr C_p.
    """
    gens: list[list[int]] = []
    offset = 0
    k = 0
    digits = []
    mm = m
    while mm:
        digits.append(mm % p)
        mm //= p
    for k in range(len(digits) - 1, -1, -1):
        size = p**k
        for _ in range(digits[k]):
            for level in range(1, k + 1):
                # cycle the p sub-blocks of size p^(level-1) inside the first block of size p^level
                sub = p ** (level - 1)
                span = sub * p
                img = list(range(m))
                for x in range(span):
                    img[offset + x] = offset + (x + sub) % span
                gens.append(img)
            offset += size
    return gens


def sylow_p(G: PermGroup, p: int, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    """A Sylow p-subgroup of ``G``.

    Groups with a block factorisation get the product of wreath-tower Sylows of
    each factor; otherwise a desk-scale greedy search over the element set is used.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.factors is None:
        return _sylow_search(G, p, cap)
    gens = []
    for f in G.factors:
        for img in _sylow_symmetric_block_perms(f.m, p):
            gens.append(transport(img, f.blocks, G.degree))
    return PermGroup(G.degree, tuple(gens), known_order=p_part(G.order(), p))


def _is_p_power(k: int, p: int) -> bool:
    return p_part(k, p) == k


def _sylow_search(G: PermGroup, p: int, cap: int) -> PermGroup:
    elems = G.elements(cap)
    target = p_part(len(elems), p)
    H_gens: list[Perm] = []
    H = {Perm.identity(G.degree)}
    candidates = [g for g in elems if _is_p_power(g.order(), p) and not g.is_identity()]
    while len(H) < target:
        for g in candidates:
            if g in H:
                continue
            closure = _closure(G.degree, H_gens + [g], cap)
            if _is_p_power(len(closure), p):
                H_gens.append(g)
                H = closure
                break
        else:  # pragma: no cover - Sylow theory guarantees progress
            raise RuntimeError("Sylow search failed to grow")
    return PermGroup(G.degree, tuple(H_gens), known_order=len(H))


# -- cosets and maximal subgroups --------------------------------------------

def right_coset_reps(R: PermGroup, Q: PermGroup, rng: random.Random | None = None) -> list[Perm]:
    """One representative of each right coset ``R g`` in ``Q``.

    With ``rng`` the representative of each coset is chosen at random.
    """
    r_elems = R.elements()
    q_set = Q.element_set()
    if not all(r in q_set for r in r_elems):
        raise ValueError("R is not a subgroup of Q")
    covered: set[Perm] = set()
    reps = []
    for g in Q.elements():
        if g in covered:
            continue
        coset = sorted((r * g for r in r_elems), key=lambda x: x.images)
        covered.update(coset)
        reps.append(rng.choice(coset) if rng is not None else g)
    return reps


def _generators_from_elements(n: int, elems: Iterable[Perm]) -> tuple[Perm, ...]:
    gens: list[Perm] = []
    span = {Perm.identity(n)}
    for g in elems:
        if g not in span:
            gens.append(g)
            span = _closure(n, gens, DEFAULT_ELEMENT_CAP)
    return tuple(gens)


def group_from_elements(n: int, elems: Iterable[Perm]) -> PermGroup:
    elems = sorted(set(elems), key=lambda g: g.images)
    G = PermGroup(n, _generators_from_elements(n, elems), known_order=len(elems))
    G._elements = tuple(elems)
    return G


def frattini_quotient(Q: PermGroup, p: int):
    """Coordinates of ``Q`` modulo its Frattini subgroup.

    Returns ``(phi, coords)`` where ``phi`` is the element set of
    ``Q^p [Q, Q]`` and ``coords`` maps every element of ``Q`` to a vector
    in ``GF(p)^d``.
    """
    elems = Q.elements()
    if not _is_p_power(len(elems), p):
        raise ValueError(f"group of order {len(elems)} is not a {p}-group")
    n = Q.degree
    gens = {g**p for g in elems}
    gens |= {a.inverse() * b.inverse() * a * b for a in elems for b in elems}
    phi = _closure(n, sorted(gens, key=lambda g: g.images), DEFAULT_ELEMENT_CAP)
    basis: list[Perm] = []
    span = set(phi)
    for g in elems:
        if g not in span:
            basis.append(g)
            span = _closure(n, sorted(phi, key=lambda x: x.images) + basis, DEFAULT_ELEMENT_CAP)
    coords: dict[Perm, tuple[int, ...]] = {}
    for vec in product(range(p), repeat=len(basis)):
        rep = Perm.identity(n)
        for g, a in zip(basis, vec):
            rep = rep * g**a
        for f in phi:
            coords[f * rep] = vec
    if len(coords) != len(elems):  # pragma: no cover - structural guarantee
        raise RuntimeError("Frattini quotient coordinates are inconsistent")
    return phi, coords


def maximal_subgroups(Q: PermGroup, p: int) -> list[PermGroup]:
    """All index-p subgroups of the p-group ``Q``, as preimages of hyperplanes of Q/Φ(Q)."""
    _, coords = frattini_quotient(Q, p)
    d = len(next(iter(coords.values()))) if coords else 0
    out = []
    for f in product(range(p), repeat=d):
        nz = [a for a in f if a]
        if not nz or nz[0] != 1:
            continue  # one functional per line through the origin
        members = [g for g, v in coords.items() if sum(a * b for a, b in zip(f, v)) % p == 0]
        out.append(group_from_elements(Q.degree, members))
    return out


def all_subgroups(Q: PermGroup, max_gens: int = 3) -> list[PermGroup]:
    """Every subgroup generated by at most ``max_gens`` elements (brute force, tiny groups)."""
    elems = Q.elements()
    n = Q.degree
    found: dict[frozenset[Perm], list[Perm]] = {}
    for k in range(max_gens + 1):
        for gens in combinations(elems, k):
            S = frozenset(_closure(n, list(gens), DEFAULT_ELEMENT_CAP))
            found.setdefault(S, list(S))
    return [group_from_elements(n, s) for s in sorted(found, key=len)]
