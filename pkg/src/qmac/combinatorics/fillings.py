"""Fillings of column diagrams and their statistics.

A filling assigns a positive integer to every cell of a diagram. The
statistics here (descents, maj, coinv, weight, content) are the ones the
Macdonald formulas sum over; the enumerator produces the non-attacking
fillings those sums range over, in lexicographic reading-word order.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from qmac.algebra.poly import Poly
from qmac.algebra.ratexpr import DenFactor, RatExpr
from qmac.combinatorics.shapes import (
    Cell,
    Composition,
    Diagram,
    SubsetMask,
    as_strong,
    beta_perm,
    comp_subset,
)
from qmac.constants import DEFAULT_ENUMERATION_MAX_N
from qmac.errors import CompositionError, PreconditionViolatedError, SizeLimitExceededError

logger = logging.getLogger(__name__)

ONE_MINUS_T = Poly({(0, 0, 0): 1, (0, 1, 0): -1})


@dataclass(frozen=True)
class Filling:
    """Entries of a diagram, stored column by column from the bottom up."""

    diagram: Diagram
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        heights = tuple(len(col) for col in self.columns)
        if heights != self.diagram.heights:
            raise CompositionError(
                f"Columns of heights {heights} do not fit diagram {self.diagram.heights}"
            )
        for col in self.columns:
            if any(not isinstance(v, int) or v < 1 for v in col):
                raise CompositionError(f"Entries must be positive integers: {col}")

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]]) -> Filling:
        cols = tuple(tuple(col) for col in columns)
        return cls(Diagram(tuple(len(col) for col in cols)), cols)

    @classmethod
    def from_text(cls, text: str) -> Filling:
        """Parse ``"1;4,5,3;2,3,1,2"``: columns split by ';', bottom entry first."""
        try:
            cols = [
                tuple(int(v) for v in chunk.split(",") if v.strip())
                for chunk in text.replace(" ", "").split(";")
            ]
        except ValueError:
            raise CompositionError(f"Cannot parse filling {text!r}") from None
        return cls.from_columns(cols)

    def to_text(self) -> str:
        return ";".join(",".join(str(v) for v in col) for col in self.columns)

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Filling:
        cols = [tuple(int(v) for v in col) for col in data["cols"]]
        filling = cls.from_columns(cols)
        if "shape" in data and tuple(data["shape"]) != filling.diagram.heights:
            raise CompositionError(f"Shape {data['shape']} does not match the columns given")
        return filling

    def to_json(self) -> dict[str, list[int] | list[list[int]]]:
        return {"shape": list(self.diagram.heights), "cols": [list(col) for col in self.columns]}

    def __getitem__(self, cell: Cell) -> int:
        self.diagram.check(cell)
        return self.columns[cell.col - 1][cell.row - 1]

    def entries(self) -> Iterator[tuple[Cell, int]]:
        for cell in self.diagram.cells:
            yield cell, self.columns[cell.col - 1][cell.row - 1]

    @cached_property
    def reading_word(self) -> tuple[int, ...]:
        return tuple(self[cell] for cell in self.diagram.reading_order)

    @property
    def max_entry(self) -> int:
        return max((v for col in self.columns for v in col), default=0)

    @property
    def is_packed(self) -> bool:
        present = {v for col in self.columns for v in col}
        return present == set(range(1, len(present) + 1))

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class StandardFilling(Filling):
    """A filling whose entries are exactly 1, ..., n."""

    def __post_init__(self) -> None:
        super().__post_init__()
        values = sorted(v for col in self.columns for v in col)
        if values != list(range(1, len(values) + 1)):
            raise CompositionError(f"Not a standard filling: {self.to_text()}")

    @classmethod
    def from_filling(cls, filling: Filling) -> StandardFilling:
        return cls(filling.diagram, filling.columns)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]]) -> StandardFilling:
        return cls.from_filling(Filling.from_columns(columns))

    @classmethod
    def from_text(cls, text: str) -> StandardFilling:
        return cls.from_filling(Filling.from_text(text))

    @property
    def n(self) -> int:
        return self.diagram.size

    @cached_property
    def cell_of(self) -> dict[int, Cell]:
        return {value: cell for cell, value in self.entries()}


# ──────────────────────────────────────────────
# Predicates
# ──────────────────────────────────────────────


def is_non_attacking(filling: Filling) -> bool:
    """No two attacking cells share an entry."""
    by_row: dict[int, list[tuple[int, int]]] = {}
    for cell, value in filling.entries():
        by_row.setdefault(cell.row, []).append((cell.col, value))
    for row, cells in by_row.items():
        if len({v for _, v in cells}) != len(cells):
            return False
        for col, value in by_row.get(row + 1, []):
            if any(lower_col < col and lower == value for lower_col, lower in cells):
                return False
    return True


def bottom_row_ok(filling: Filling, gamma: Sequence[int]) -> bool:
    """The bottom row reads in the same relative order as beta(gamma)."""
    beta = beta_perm(gamma)
    bottom = [filling[cell] for cell in filling.diagram.bottom_row]
    if len(bottom) != len(beta):
        return False
    return all(
        (bottom[i] < bottom[j]) == (beta[i] < beta[j]) and bottom[i] != bottom[j]
        for i, j in itertools.combinations(range(len(beta)), 2)
    )


def is_nat(filling: Filling, gamma: Sequence[int]) -> bool:
    """Membership in NAT(gamma): shape dg(inc(gamma)), non-attacking, bottom row ok."""
    return (
        filling.diagram == Diagram.for_composition(gamma)
        and is_non_attacking(filling)
        and bottom_row_ok(filling, gamma)
    )


# ──────────────────────────────────────────────
# Statistics
# ──────────────────────────────────────────────


def des_set(filling: Filling) -> tuple[Cell, ...]:
    """Cells above the bottom row whose entry exceeds the entry directly below."""
    return tuple(
        u
        for u in filling.diagram.hat_cells
        if filling[u] > filling[Cell(u.row - 1, u.col)]
    )


def maj(filling: Filling) -> int:
    d = filling.diagram
    return sum(d.leg(u) + 1 for u in des_set(filling))


def is_coinversion(x: int, y: int, z: int) -> bool:
    """Whether the triple with x above y and z in the arm of x counts.

    Equal x and y never count; otherwise the entries must increase
    cyclically counterclockwise starting from any of x, y, z.
    """
    if x == y:
        return False
    return (x < z < y) or (z < y < x) or (y < x < z)


def coinv(filling: Filling) -> int:
    d = filling.diagram
    count = 0
    for x_cell in d.hat_cells:
        x, y = filling[x_cell], filling[Cell(x_cell.row - 1, x_cell.col)]
        if x == y:
            continue
        type_a, type_b = d.arm_cells(x_cell)
        for z_cell in itertools.chain(type_a, type_b):
            if is_coinversion(x, y, filling[z_cell]):
                count += 1
    return count


def cell_factor(diagram: Diagram, u: Cell) -> DenFactor:
    """``1 - q^(leg+1) t^(arm+1)`` for the cell u."""
    return DenFactor.qt(diagram.leg(u) + 1, diagram.arm(u) + 1)


def weight_parts(filling: Filling) -> tuple[Poly, dict[DenFactor, int]]:
    """Unnormalized numerator and denominator factors of :func:`weight`."""
    d = filling.diagram
    factors: dict[DenFactor, int] = {}
    unequal = 0
    for u in d.hat_cells:
        if filling[u] != filling[Cell(u.row - 1, u.col)]:
            unequal += 1
            factor = cell_factor(d, u)
            factors[factor] = factors.get(factor, 0) + 1
    num = Poly.monomial(maj(filling), coinv(filling)) * ONE_MINUS_T**unequal
    return num, factors


def weight(filling: Filling) -> RatExpr:
    """q^maj t^coinv times (1-t)/(1-q^(leg+1)t^(arm+1)) over cells unequal to the one below."""
    num, factors = weight_parts(filling)
    return RatExpr(num, factors)


def content(filling: Filling) -> SubsetMask:
    """For a packed filling, the subset encoding the multiplicities of 1, 2, ..., m."""
    if not filling.is_packed:
        raise PreconditionViolatedError(f"Filling {filling} is not packed")
    counts = [0] * filling.max_entry
    for _, value in filling.entries():
        counts[value - 1] += 1
    return comp_subset(counts)


def x_monomial(filling: Filling, m: int) -> tuple[int, ...]:
    """Exponent vector of x^T in x_1, ..., x_m."""
    exps = [0] * m
    for _, value in filling.entries():
        if value > m:
            raise PreconditionViolatedError(f"Entry {value} exceeds the alphabet [{m}]")
        exps[value - 1] += 1
    return tuple(exps)


# ──────────────────────────────────────────────
# Enumeration
# ──────────────────────────────────────────────


def check_size(n: int, max_n: int | None) -> None:
    """Raise SizeLimitExceededError when ``n`` is above the guard."""
    limit = DEFAULT_ENUMERATION_MAX_N if max_n is None else max_n
    if n > limit:
        raise SizeLimitExceededError(n, limit)


def enumerate_fillings(
    diagram: Diagram,
    alphabet: int,
    *,
    distinct: bool = False,
    packed: bool = False,
    bottom_pattern: Sequence[int] | None = None,
    bottom_row: Sequence[int] | None = None,
) -> Iterator[Filling]:
    """Non-attacking fillings of ``diagram`` with entries in [alphabet].

    Cells are filled in reading order so attack checks only look at cells
    already placed: the same row to the left and the row above to the right.

    Args:
        diagram: Shape to fill.
        alphabet: Largest allowed entry.
        distinct: Require all entries distinct (standard fillings when
            ``alphabet == diagram.size``).
        packed: Require the set of entries to be {1, ..., max}.
        bottom_pattern: Relative order the bottom row must have, as a
            permutation listed left to right.
        bottom_row: Exact bottom-row entries, left to right.

    Yields:
        Fillings in lexicographic order of their reading words.
    """
    order = diagram.reading_order
    index = diagram.reading_index
    size = len(order)
    attackers = [
        tuple(
            index[v]
            for v in order[:pos]
            if (v.row == u.row) or (v.row == u.row + 1 and v.col > u.col)
        )
        for pos, u in enumerate(order)
    ]
    bottom_cells = diagram.bottom_row
    fixed: dict[int, int] = {}
    if bottom_row is not None:
        if len(bottom_row) != len(bottom_cells):
            raise PreconditionViolatedError(
                f"Bottom row {tuple(bottom_row)} does not fit {len(bottom_cells)} columns"
            )
        fixed = {index[c]: v for c, v in zip(bottom_cells, bottom_row, strict=True)}
    # (earlier position, whether this entry must be larger) per bottom cell
    pattern: dict[int, tuple[tuple[int, bool], ...]] = {}
    if bottom_pattern is not None:
        if len(bottom_pattern) != len(bottom_cells):
            raise PreconditionViolatedError(
                f"Pattern {tuple(bottom_pattern)} does not fit {len(bottom_cells)} columns"
            )
        for k, cell in enumerate(bottom_cells):
            pattern[index[cell]] = tuple(
                (index[bottom_cells[j]], bottom_pattern[k] > bottom_pattern[j]) for j in range(k)
            )

    values = [0] * size
    counts = [0] * (alphabet + 2)

    def fits(pos: int, value: int) -> bool:
        if distinct and counts[value]:
            return False
        if any(values[p] == value for p in attackers[pos]):
            return False
        return all((value > values[p]) == larger for p, larger in pattern.get(pos, ()))

    def packed_ok(remaining: int) -> bool:
        top = max((v for v in range(alphabet, 0, -1) if counts[v]), default=0)
        missing = sum(1 for v in range(1, top) if not counts[v])
        return missing <= remaining

    def extend(pos: int) -> Iterator[None]:
        if pos == size:
            if not packed or packed_ok(0):
                yield None
            return
        candidates: Iterable[int] = (fixed[pos],) if pos in fixed else range(1, alphabet + 1)
        for value in candidates:
            if not 1 <= value <= alphabet or not fits(pos, value):
                continue
            values[pos] = value
            counts[value] += 1
            if not packed or packed_ok(size - pos - 1):
                yield from extend(pos + 1)
            counts[value] -= 1
            values[pos] = 0

    for _ in extend(0):
        columns: list[list[int]] = [[0] * h for h in diagram.heights]
        for pos, cell in enumerate(order):
            columns[cell.col - 1][cell.row - 1] = values[pos]
        yield Filling(diagram, tuple(tuple(col) for col in columns))


def enumerate_packed_nat(gamma: Sequence[int], *, max_n: int | None = None) -> Iterator[Filling]:
    """Packed non-attacking fillings of dg(inc(gamma)) whose bottom row follows beta(gamma)."""
    parts: Composition = as_strong(gamma)
    check_size(sum(parts), max_n)
    diagram = Diagram.for_composition(parts)
    logger.debug("Enumerating packed NAT fillings of %s", parts)
    yield from enumerate_fillings(
        diagram, diagram.size, packed=True, bottom_pattern=beta_perm(parts)
    )
