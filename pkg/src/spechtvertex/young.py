"""Partitions, tableaux, tabloids, dominance order and splitting partitions.

Tableaux are stored as tuples of rows; entries are positive integers.  A
tableau of shape ``lambda`` partitioning ``n`` normally holds ``1..n``, but
subtableaux (such as the bottom rows of a larger tableau) keep the entries of
their parent, so only distinctness is enforced at construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import accumulate
from math import factorial, prod
from typing import Iterable, Sequence

DEFAULT_SYT_CAP = 14


class CapExceeded(RuntimeError):
    """A desk-scale enumeration limit was hit."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"5,5,2,2,2,2"`` or ``"(5^2,2^4)"``; an empty string or ``∅`` gives the empty partition."""
        text = text.strip().strip("()")
        if text in ("", "∅"):
            return cls(())
        try:
            parts: list[int] = []
            for item in text.split(","):
                value, _, mult = item.partition("^")
                parts.extend([int(value)] * (int(mult) if mult else 1))
            return cls(tuple(parts))
        except ValueError as exc:
            raise ValueError(f"cannot parse partition {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def compact(self) -> str:
        """Exponential notation, e.g. ``(5^2,2^4)``."""
        if not self.parts:
            return "∅"
        items = [f"{v}^{m}" if m > 1 else str(v) for v, m in run_decomposition(self)]
        return "(" + ",".join(items) + ")"

    @cached_property
    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    def dominates(self, other: "Partition") -> bool:
        """Dominance of partitions (or compositions) of the same size, by partial sums."""
        if self.n != other.n:
            raise ValueError("dominance compares partitions of the same size")
        a = list(accumulate(self.parts))
        b = list(accumulate(other.parts))
        width = max(len(a), len(b))
        a += [self.n] * (width - len(a))
        b += [other.n] * (width - len(b))
        return all(x >= y for x, y in zip(a, b))

    def to_json(self) -> list[int]:
        return list(self.parts)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""

    def rec(remaining: int, largest: int) -> Iterable[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return [Partition(p) for p in rec(n, n)]


def run_decomposition(lam: Partition) -> list[tuple[int, int]]:
    """Distinct part values with multiplicities, largest value first."""
    runs: list[tuple[int, int]] = []
    for x in lam.parts:
        if runs and runs[-1][0] == x:
            runs[-1] = (x, runs[-1][1] + 1)
        else:
            runs.append((x, 1))
    return runs


def hook_length_count(lam: Partition) -> int:
    """Number of standard tableaux of shape ``lam`` by the hook length formula."""
    conj = lam.conjugate.parts
    hooks = prod(
        (lam.parts[i] - j) + (conj[j] - i) - 1
        for i in range(len(lam))
        for j in range(lam.parts[i])
    )
    return factorial(lam.n) // hooks


@dataclass(frozen=True)
class SplittingContext:
    """A choice of splitting partition ``mu`` of ``lam`` with the derived shape ``eta``.

    ``split_index`` is the number of trailing runs of ``lam`` assigned to ``mu``.
    """

    lam: Partition
    mu: Partition
    eta: Partition
    split_index: int

    @property
    def mu_first(self) -> int:
        return self.mu.parts[0] if self.mu.parts else 0

    @property
    def run_multiplicities(self) -> tuple[int, ...]:
        """The multiplicities ``m_1..m_k`` of the parts of ``mu``."""
        return tuple(m for _, m in run_decomposition(self.mu))

    def to_json(self) -> dict:
        return {"lambda": self.lam.to_json(), "mu": self.mu.to_json(), "eta": self.eta.to_json()}


def splitting_context(lam: Partition, mu: Partition) -> SplittingContext:
    """Build the context for an explicit ``mu``; raises ValueError if it does not split ``lam``."""
    for ctx in splitting_partitions(lam):
        if ctx.mu == mu:
            return ctx
    raise ValueError(f"{mu} is not a splitting partition of {lam}")


def splitting_partitions(lam: Partition) -> list[SplittingContext]:
    """Every splitting partition of ``lam``, the empty one first.

    A splitting partition is a union of complete trailing runs; at least one
    leading run always stays outside it.
    """
    runs = run_decomposition(lam)
    out = []
    for k in range(len(runs)):
        head, tail = runs[: len(runs) - k], runs[len(runs) - k:]
        mu = Partition(tuple(v for v, m in tail for _ in range(m)))
        mu1 = mu.parts[0] if mu.parts else 0
        eta = Partition(tuple(v - mu1 for v, m in head for _ in range(m)))
        out.append(SplittingContext(lam, mu, eta, k))
    return out


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        Partition(tuple(len(r) for r in rows))
        flat = [x for r in rows for x in r]
        if len(set(flat)) != len(flat):
            raise ValueError("tableau entries must be distinct")
        if any(x < 1 for x in flat):
            raise ValueError("tableau entries must be positive")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(x for r in self.rows for x in r)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        width = len(self.rows[0]) if self.rows else 0
        return tuple(tuple(r[j] for r in self.rows if len(r) > j) for j in range(width))

    @cached_property
    def row_of(self) -> tuple[int, ...]:
        """Row index of each entry ``1..n`` (requires the entries to be exactly ``1..n``)."""
        out = [-1] * self.n
        for i, r in enumerate(self.rows):
            for x in r:
                if x > self.n:
                    raise ValueError("row_of needs a tableau filled with 1..n")
                out[x - 1] = i
        return tuple(out)

    def is_row_standard(self) -> bool:
        return all(list(r) == sorted(r) for r in self.rows)

    def is_column_standard(self) -> bool:
        return all(list(c) == sorted(c) for c in self.columns)

    def is_standard(self) -> bool:
        return self.is_row_standard() and self.is_column_standard()

    def act(self, g) -> "Tableau":
        """The tableau ``t g``: each entry ``x`` replaced by its image under ``g``."""
        return Tableau(tuple(tuple(g(x) for x in r) for r in self.rows))

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass(frozen=True)
class Tabloid:
    """Row-equivalence class of a tableau, in canonical form entry -> row."""

    shape: Partition
    row_of: tuple[int, ...]

    @classmethod
    def of(cls, t: Tableau) -> "Tabloid":
        return cls(t.shape, t.row_of)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.shape.parts]
        for x, r in enumerate(self.row_of, start=1):
            out[r].append(x)
        return tuple(tuple(r) for r in out)

    def row_straightened(self) -> Tableau:
        return Tableau(self.rows())

    def act(self, g) -> "Tabloid":
        new = [0] * len(self.row_of)
        for x, r in enumerate(self.row_of, start=1):
            new[g(x) - 1] = r
        return Tabloid(self.shape, tuple(new))

    def sort_key(self) -> tuple[int, ...]:
        """Total order refining dominance: a more dominant tabloid sorts first."""
        return self.row_of


def row_straighten(t: Tableau) -> Tableau:
    return Tableau(tuple(tuple(sorted(r)) for r in t.rows))


def _row_words_dominate(a: Sequence[int], b: Sequence[int], nrows: int) -> bool:
    ca = [0] * nrows
    cb = [0] * nrows
    for ra, rb in zip(a, b):
        ca[ra] += 1
        cb[rb] += 1
        sa = sb = 0
        for i in range(nrows):
            sa += ca[i]
            sb += cb[i]
            if sa < sb:
                return False
    return True


def dominance_leq(a: Tableau | Tabloid, b: Tableau | Tabloid) -> bool:
    """True when ``b`` dominates ``a``.

    For every ``k`` the entries ``<= k`` of each side form a composition by row;
    ``b`` dominates ``a`` when each of these compositions dominates by partial sums.
    """
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return _row_words_dominate(b.row_of, a.row_of, len(a.shape))


def t_star(lam: Partition) -> Tableau:
    """The standard tableau whose i-th row is the i-th consecutive block of 1..n."""
    ends = list(accumulate(lam.parts))
    starts = [0] + ends[:-1]
    return Tableau(tuple(tuple(range(s + 1, e + 1)) for s, e in zip(starts, ends)))


def standard_tableaux(lam: Partition, cap: int = DEFAULT_SYT_CAP) -> list[Tableau]:
    """All standard tableaux of shape ``lam``, most dominant first.

    The order is lexicographic in the row-index word (row of 1, row of 2, ...),
    which is a linear extension of dominance, so ``t_star`` comes first.
    """
    n = lam.n
    if n > cap:
        raise CapExceeded(f"standard tableaux enumeration capped at n <= {cap}, got n = {n}")
    out: list[tuple[int, ...]] = []
    fill = [0] * len(lam)
    word: list[int] = []

    def rec() -> None:
        if len(word) == n:
            out.append(tuple(word))
            return
        for i, length in enumerate(lam.parts):
            if fill[i] < length and (i == 0 or fill[i - 1] > fill[i]):
                fill[i] += 1
                word.append(i)
                rec()
                word.pop()
                fill[i] -= 1

    rec()
    return [Tabloid(lam, w).row_straightened() for w in out]


def column_standard_tableaux(lam: Partition) -> Iterable[Tableau]:
    """Every column-standard tableau of shape ``lam`` (no cap; callers keep n small)."""
    from itertools import combinations

    cols = lam.conjugate.parts

    def rec(j: int, remaining: tuple[int, ...]):
        if j == len(cols):
            yield ()
            return
        for chosen in combinations(remaining, cols[j]):
            rest = tuple(x for x in remaining if x not in chosen)
            for tail in rec(j + 1, rest):
                yield (chosen,) + tail

    for columns in rec(0, tuple(range(1, lam.n + 1))):
        yield Tableau(
            tuple(tuple(columns[j][i] for j in range(lam.parts[i])) for i in range(len(lam)))
        )


def subtableau_z(ctx: SplittingContext, t: Tableau) -> Tableau:
    """The bottom ``len(mu)`` rows of ``t``, a tableau of shape ``mu``."""
    if t.shape != ctx.lam:
        raise ValueError(f"shape mismatch: {t.shape} vs {ctx.lam}")
    k = len(ctx.mu)
    return Tableau(t.rows[len(t.rows) - k:] if k else ())


def subtableau_u(ctx: SplittingContext, t: Tableau) -> Tableau:
    """The trailing ``lambda_1 - mu_1`` columns of ``t``, a tableau of shape ``eta``."""
    if t.shape != ctx.lam:
        raise ValueError(f"shape mismatch: {t.shape} vs {ctx.lam}")
    m = ctx.mu_first
    return Tableau(tuple(r[m:] for r in t.rows if len(r) > m))


def tableau_from_json(data: Sequence[Sequence[int]]) -> Tableau:
    return Tableau(tuple(tuple(r) for r in data))
