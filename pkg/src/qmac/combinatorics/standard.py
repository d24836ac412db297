"""Standard fillings: standardization, destandardization, and the ST₀/ST₁ maps.

In a standard filling every value labels exactly one cell, so sets such as
V(tau) and W(tau) are sets of values; the cell of value ``i`` is
``tau.cell_of[i]``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence

from qmac.combinatorics.fillings import (
    Filling,
    StandardFilling,
    check_size,
    des_set,
    enumerate_fillings,
)
from qmac.combinatorics.shapes import (
    Cell,
    Diagram,
    SubsetMask,
    as_strong,
    beta_perm,
    subset_comp,
)
from qmac.errors import PreconditionViolatedError

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────
# Enumeration
# ──────────────────────────────────────────────


def enumerate_st(gamma: Sequence[int], *, max_n: int | None = None) -> Iterator[StandardFilling]:
    """ST(gamma): bijective non-attacking fillings of dg(inc(gamma)) with a valid bottom row."""
    parts = as_strong(gamma)
    check_size(sum(parts), max_n)
    diagram = Diagram.for_composition(parts)
    for filling in enumerate_fillings(
        diagram, diagram.size, distinct=True, bottom_pattern=beta_perm(parts)
    ):
        yield StandardFilling.from_filling(filling)


def is_st0(tau: StandardFilling) -> bool:
    return not des_set(tau)


def is_st1(tau: StandardFilling) -> bool:
    """Every descent drops by exactly one."""
    return all(tau[u] - tau[Cell(u.row - 1, u.col)] == 1 for u in des_set(tau))


def enumerate_st0(gamma: Sequence[int], *, max_n: int | None = None) -> Iterator[StandardFilling]:
    return (tau for tau in enumerate_st(gamma, max_n=max_n) if is_st0(tau))


def enumerate_st1(gamma: Sequence[int], *, max_n: int | None = None) -> Iterator[StandardFilling]:
    return (tau for tau in enumerate_st(gamma, max_n=max_n) if is_st1(tau))


# ──────────────────────────────────────────────
# Standardization
# ──────────────────────────────────────────────


def standardize(filling: Filling) -> StandardFilling:
    """Relabel cells 1..n by (entry, reading position)."""
    d = filling.diagram
    index = d.reading_index
    ranked = sorted(d.cells, key=lambda cell: (filling[cell], index[cell]))
    columns = [[0] * h for h in d.heights]
    for label, cell in enumerate(ranked, start=1):
        columns[cell.col - 1][cell.row - 1] = label
    return StandardFilling(d, tuple(tuple(col) for col in columns))


def inverse_descents(tau: StandardFilling) -> SubsetMask:
    """ID(tau): values i such that i+1 comes before i in the reading word."""
    position = {value: pos for pos, value in enumerate(tau.reading_word)}
    return SubsetMask.from_members(
        tau.n, (i for i in range(1, tau.n) if position[i + 1] < position[i])
    )


def v_set(tau: StandardFilling) -> SubsetMask:
    """ID(tau) plus the values i whose cell attacks the cell of i+1."""
    cell_of = tau.cell_of
    attacking = SubsetMask.from_members(
        tau.n, (i for i in range(1, tau.n) if Diagram.attacks(cell_of[i], cell_of[i + 1]))
    )
    return inverse_descents(tau) | attacking


def w_set(tau: StandardFilling) -> SubsetMask:
    """Values i sitting directly above i+1."""
    cell_of = tau.cell_of
    members = []
    for i in range(1, tau.n):
        u = cell_of[i]
        if u.row > 1 and tau[Cell(u.row - 1, u.col)] == i + 1:
            members.append(i)
    return SubsetMask.from_members(tau.n, members)


def destandardize(tau: StandardFilling, subset: SubsetMask) -> Filling:
    """delta_S(tau): replace value v by the v-th letter of 1^a1 2^a2 ... for a = comp(S).

    Raises:
        PreconditionViolatedError: ``subset`` does not contain V(tau).
    """
    if subset.n != tau.n:
        raise PreconditionViolatedError(
            f"Subset of [{subset.n - 1}] used on a filling of size {tau.n}"
        )
    if not v_set(tau).issubset(subset):
        raise PreconditionViolatedError(f"{subset} does not contain V(tau) = {v_set(tau)}")
    word = [letter for letter, part in enumerate(subset_comp(subset), start=1) for _ in range(part)]
    columns = tuple(tuple(word[v - 1] for v in col) for col in tau.columns)
    return Filling(tau.diagram, columns)


def des_values(tau: StandardFilling) -> frozenset[int]:
    """Des(tau) as the set of values occupying descent cells."""
    return frozenset(tau[u] for u in des_set(tau))


# ──────────────────────────────────────────────
# The ST₀ → ST₁ bijection
# ──────────────────────────────────────────────


def _runs(members: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive integers as (start, length)."""
    runs: list[tuple[int, int]] = []
    for i in members:
        if runs and runs[-1][0] + runs[-1][1] == i:
            runs[-1] = (runs[-1][0], runs[-1][1] + 1)
        else:
            runs.append((i, 1))
    return runs


def iota(tau: StandardFilling, subset: SubsetMask) -> StandardFilling:
    """Reverse the values i..i+k on each maximal run i..i+k-1 of ``subset``.

    Each run occupies a vertical strip (i above i+1 above ...), so reversing
    it turns the strip into a chain of descents dropping by one.

    Raises:
        PreconditionViolatedError: tau has a descent or ``subset`` is not within W(tau).
    """
    if not is_st0(tau):
        raise PreconditionViolatedError(f"{tau} has descents; iota needs a filling in ST0")
    if subset.n != tau.n or not subset.issubset(w_set(tau)):
        raise PreconditionViolatedError(f"{subset} is not a subset of W(tau) = {w_set(tau)}")
    mapping = {v: v for v in range(1, tau.n + 1)}
    for start, length in _runs(subset.members):
        for v in range(start, start + length + 1):
            mapping[v] = 2 * start + length - v
    columns = tuple(tuple(mapping[v] for v in col) for col in tau.columns)
    return StandardFilling(tau.diagram, columns)


def column_sort(tau: StandardFilling) -> StandardFilling:
    """Sort each column to decrease upward; inverts :func:`iota`."""
    columns = tuple(tuple(sorted(col, reverse=True)) for col in tau.columns)
    return StandardFilling(tau.diagram, columns)


def descent_group(tau: StandardFilling, value: int) -> frozenset[Cell]:
    """The maximal column strip through ``value``: descents above a non-descent bottom."""
    d = tau.diagram

    def is_descent(u: Cell) -> bool:
        return u.row > 1 and tau[u] > tau[Cell(u.row - 1, u.col)]

    bottom = tau.cell_of[value]
    while is_descent(bottom):
        bottom = Cell(bottom.row - 1, bottom.col)
    group = [bottom]
    up = d.north(bottom)
    while up is not None and is_descent(up):
        group.append(up)
        up = d.north(up)
    return frozenset(group)


def nu_set(tau: StandardFilling) -> SubsetMask:
    """ID(tau) plus the values i whose descent group attacks the descent group of i+1."""
    groups = {v: descent_group(tau, v) for v in range(1, tau.n + 1)}
    attacking = SubsetMask.from_members(
        tau.n,
        (
            i
            for i in range(1, tau.n)
            if any(Diagram.attacks(u, v) for u in groups[i] for v in groups[i + 1])
        ),
    )
    return inverse_descents(tau) | attacking


def omega(tau: StandardFilling) -> int:
    """h(gamma) minus the number of i sharing a column with i+1."""
    d = tau.diagram
    cell_of = tau.cell_of
    shared = sum(1 for i in range(1, tau.n) if cell_of[i].col == cell_of[i + 1].col)
    return d.size - d.num_nonempty_cols - shared


def coinv_des(tau: StandardFilling) -> int:
    """Sum of arm(u) over the descent cells of tau."""
    d = tau.diagram
    return sum(d.arm(u) for u in des_set(tau))
