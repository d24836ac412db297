"""Compositions, the composition/subset bijection, and column diagrams.

Diagrams use French notation: column ``c`` holds ``heights[c-1]`` cells, row 1
is the bottom row, and cells are ``Cell(row, col)`` with 1-based indices.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from qmac.constants import MAX_SUBSET_DEGREE
from qmac.errors import CellOutOfDiagramError, CompositionError

Composition = tuple[int, ...]
Permutation = tuple[int, ...]


# ──────────────────────────────────────────────
# Compositions
# ──────────────────────────────────────────────


def as_composition(parts: Iterable[int]) -> Composition:
    """Validate a weak composition (nonnegative parts)."""
    result = tuple(parts)
    if any(not isinstance(p, int) or p < 0 for p in result):
        raise CompositionError(f"Composition parts must be nonnegative integers: {result}")
    return result


def as_strong(parts: Iterable[int]) -> Composition:
    """Validate a nonempty strong composition (positive parts)."""
    result = as_composition(parts)
    if not result or 0 in result:
        raise CompositionError(f"Expected a nonempty strong composition, got {result}")
    return result


def parse_composition(text: str) -> Composition:
    """Parse ``"1,4,3"`` into ``(1, 4, 3)``."""
    try:
        parts = tuple(int(p) for p in text.replace(" ", "").split(",") if p != "")
    except ValueError:
        raise CompositionError(f"Cannot parse composition {text!r}") from None
    return as_composition(parts)


def collapse(alpha: Iterable[int]) -> Composition:
    """alpha⁺: drop zero parts, keeping order."""
    return tuple(p for p in as_composition(alpha) if p)


def inc_sort(alpha: Iterable[int]) -> Composition:
    return tuple(sorted(as_composition(alpha)))


def beta_perm(alpha: Iterable[int]) -> Permutation:
    """The longest permutation sorting alpha into inc(alpha).

    Positions are listed by part value ascending, ties by position descending,
    so ``alpha[beta[i]-1] == inc_sort(alpha)[i]`` with maximal inversions.
    """
    parts = as_composition(alpha)
    order = sorted(range(len(parts)), key=lambda i: (parts[i], -i))
    return tuple(i + 1 for i in order)


def h_stat(gamma: Iterable[int]) -> int:
    """h(gamma) = |gamma| - l(gamma), the number of cells above the bottom row."""
    parts = as_strong(gamma)
    return sum(parts) - len(parts)


def compositions_of(n: int) -> Iterator[Composition]:
    """Strong compositions of n, in ascending order of their subset masks."""
    if n < 1:
        return
    for mask in range(1 << (n - 1)):
        yield subset_comp(SubsetMask(n, mask))


def partitions_of(n: int, largest: int | None = None) -> Iterator[Composition]:
    """Partitions of n as weakly decreasing tuples, lexicographically descending."""
    if n == 0:
        yield ()
        return
    top = n if largest is None else min(n, largest)
    for first in range(top, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first, *rest)


def rearrangements(parts: Iterable[int]) -> list[Composition]:
    """Distinct orderings of ``parts``, sorted."""
    return sorted(set(itertools.permutations(tuple(parts))))


def weak_compositions(gamma: Iterable[int], m: int) -> Iterator[Composition]:
    """Weak compositions alpha of length m with alpha⁺ = gamma."""
    parts = as_strong(gamma)
    for positions in itertools.combinations(range(m), len(parts)):
        alpha = [0] * m
        for pos, part in zip(positions, parts, strict=True):
            alpha[pos] = part
        yield tuple(alpha)


# ──────────────────────────────────────────────
# Subsets of [n-1]
# ──────────────────────────────────────────────


@dataclass(frozen=True, order=True)
class SubsetMask:
    """A subset of {1, ..., n-1}; member i is bit i-1 of ``mask``."""

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_SUBSET_DEGREE:
            raise CompositionError(f"Subset degree must be in [0, {MAX_SUBSET_DEGREE}]: {self.n}")
        if self.mask < 0 or self.mask >> max(self.n - 1, 0):
            raise CompositionError(f"Mask {self.mask:#b} is not a subset of [{self.n - 1}]")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> SubsetMask:
        mask = 0
        for i in members:
            if not 1 <= i <= n - 1:
                raise CompositionError(f"Member {i} is outside [{n - 1}]")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> SubsetMask:
        return cls(n, (1 << max(n - 1, 0)) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(max(self.n - 1, 0)) if self.mask >> i & 1)

    @property
    def composition(self) -> Composition:
        return subset_comp(self)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, item: object) -> bool:
        return isinstance(item, int) and 1 <= item < self.n and bool(self.mask >> (item - 1) & 1)

    def _same_degree(self, other: SubsetMask) -> None:
        if self.n != other.n:
            raise CompositionError(f"Subsets of different degrees: {self.n} vs {other.n}")

    def __or__(self, other: SubsetMask) -> SubsetMask:
        self._same_degree(other)
        return SubsetMask(self.n, self.mask | other.mask)

    def __and__(self, other: SubsetMask) -> SubsetMask:
        self._same_degree(other)
        return SubsetMask(self.n, self.mask & other.mask)

    def __sub__(self, other: SubsetMask) -> SubsetMask:
        self._same_degree(other)
        return SubsetMask(self.n, self.mask & ~other.mask)

    def issubset(self, other: SubsetMask) -> bool:
        self._same_degree(other)
        return self.mask & ~other.mask == 0

    def subsets(self) -> Iterator[SubsetMask]:
        """All subsets, ascending by mask."""
        sub = 0
        while True:
            yield SubsetMask(self.n, sub)
            if sub == self.mask:
                return
            sub = (sub - self.mask) & self.mask

    def supersets(self) -> Iterator[SubsetMask]:
        """All supersets within [n-1], ascending by mask."""
        free = SubsetMask.full(self.n).mask & ~self.mask
        for extra in SubsetMask(self.n, free).subsets():
            yield SubsetMask(self.n, self.mask | extra.mask)

    def to_list(self) -> list[int]:
        return list(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.members) + "}"


def comp_subset(alpha: Iterable[int]) -> SubsetMask:
    """Strong composition -> set of its proper partial sums."""
    parts = as_strong(alpha)
    return SubsetMask.from_members(sum(parts), itertools.accumulate(parts[:-1]))


def subset_comp(subset: SubsetMask) -> Composition:
    """Subset of [n-1] -> the strong composition of n with those partial sums."""
    if subset.n < 1:
        raise CompositionError("The empty composition has no subset encoding")
    cuts = (0, *subset.members, subset.n)
    return tuple(b - a for a, b in itertools.pairwise(cuts))


# ──────────────────────────────────────────────
# Diagrams
# ──────────────────────────────────────────────


class Cell(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Diagram:
    """A column diagram given by its column heights, left to right."""

    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        as_composition(self.heights)

    @classmethod
    def of(cls, alpha: Iterable[int]) -> Diagram:
        """dg(alpha), zero-height columns included."""
        return cls(as_composition(alpha))

    @classmethod
    def for_composition(cls, gamma: Iterable[int]) -> Diagram:
        """dg(inc(gamma)), the shape every filling of gamma lives on."""
        return cls(inc_sort(gamma))

    @property
    def size(self) -> int:
        return sum(self.heights)

    @property
    def num_cols(self) -> int:
        return len(self.heights)

    @property
    def num_rows(self) -> int:
        return max(self.heights, default=0)

    @property
    def num_nonempty_cols(self) -> int:
        return sum(1 for h in self.heights if h)

    def __contains__(self, cell: object) -> bool:
        if not isinstance(cell, tuple) or len(cell) != 2:
            return False
        row, col = cell
        return 1 <= col <= len(self.heights) and 1 <= row <= self.heights[col - 1]

    def check(self, cell: Cell) -> None:
        if cell not in self:
            raise CellOutOfDiagramError(cell, self.heights)

    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        """Column by column, bottom to top."""
        return tuple(
            Cell(row, col)
            for col, height in enumerate(self.heights, start=1)
            for row in range(1, height + 1)
        )

    @cached_property
    def hat_cells(self) -> tuple[Cell, ...]:
        """Cells above the bottom row."""
        return tuple(c for c in self.cells if c.row > 1)

    @cached_property
    def reading_order(self) -> tuple[Cell, ...]:
        """Rows from top to bottom, left to right within a row."""
        return tuple(
            Cell(row, col)
            for row in range(self.num_rows, 0, -1)
            for col, height in enumerate(self.heights, start=1)
            if height >= row
        )

    @cached_property
    def reading_index(self) -> dict[Cell, int]:
        return {cell: i for i, cell in enumerate(self.reading_order)}

    @cached_property
    def bottom_row(self) -> tuple[Cell, ...]:
        return tuple(Cell(1, col) for col, h in enumerate(self.heights, start=1) if h)

    def leg(self, u: Cell) -> int:
        """Cells above u in its column."""
        self.check(u)
        return self.heights[u.col - 1] - u.row

    def arm_cells(self, u: Cell) -> tuple[tuple[Cell, ...], tuple[Cell, ...]]:
        """The arm of u, split into its own row (type A) and the row below (type B)."""
        return self._arms[u]

    def arm(self, u: Cell) -> int:
        type_a, type_b = self.arm_cells(u)
        return len(type_a) + len(type_b)

    @cached_property
    def _arms(self) -> _ArmTable:
        return _ArmTable(self)

    def south(self, u: Cell) -> Cell | None:
        self.check(u)
        return Cell(u.row - 1, u.col) if u.row > 1 else None

    def north(self, u: Cell) -> Cell | None:
        self.check(u)
        above = Cell(u.row + 1, u.col)
        return above if above in self else None

    @staticmethod
    def attacks(u: Cell, v: Cell) -> bool:
        """Same row, or adjacent rows with the upper cell strictly to the right."""
        if u == v:
            return False
        if u.row == v.row:
            return True
        if abs(u.row - v.row) != 1:
            return False
        upper, lower = (u, v) if u.row > v.row else (v, u)
        return upper.col > lower.col


class _ArmTable:
    """Lazily computed arm cells, keyed by cell."""

    def __init__(self, diagram: Diagram) -> None:
        self._diagram = diagram
        self._table: dict[Cell, tuple[tuple[Cell, ...], tuple[Cell, ...]]] = {}

    def __getitem__(self, u: Cell) -> tuple[tuple[Cell, ...], tuple[Cell, ...]]:
        cached = self._table.get(u)
        if cached is not None:
            return cached
        diagram = self._diagram
        diagram.check(u)
        heights = diagram.heights
        own = heights[u.col - 1]
        type_a = tuple(
            Cell(u.row, j)
            for j in range(u.col + 1, len(heights) + 1)
            if heights[j - 1] <= own and heights[j - 1] >= u.row
        )
        type_b = tuple(
            Cell(u.row - 1, j)
            for j in range(1, u.col)
            if heights[j - 1] < own and u.row > 1 and heights[j - 1] >= u.row - 1
        )
        result = (type_a, type_b)
        self._table[u] = result
        return result
