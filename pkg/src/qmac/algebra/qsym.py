"""Quasisymmetric expressions in the monomial and fundamental bases.

Basis elements are indexed by subsets of [n-1] (``SubsetMask``); the
composition label of a term is derived from its subset for display only.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from collections.abc import Iterator, Mapping
from fractions import Fraction

from qmac.algebra.ratexpr import RatAccumulator, RatExpr
from qmac.algebra.xpoly import XPoly
from qmac.combinatorics.shapes import SubsetMask, subset_comp
from qmac.errors import CompositionError
from qmac.models import Basis, QSymExprDoc, QSymTermDoc


class QSymExpr:
    """A degree-n quasisymmetric expression with RatExpr coefficients.

    Zero coefficients are pruned and terms iterate in ascending mask order.
    """

    __slots__ = ("degree", "basis", "_coeffs")

    degree: int
    basis: Basis
    _coeffs: dict[SubsetMask, RatExpr]

    def __init__(
        self,
        degree: int,
        basis: Basis,
        coeffs: Mapping[SubsetMask, RatExpr] | None = None,
    ) -> None:
        if degree < 0:
            raise CompositionError(f"Degree must be nonnegative: {degree}")
        self.degree = degree
        self.basis = Basis(basis)
        clean: dict[SubsetMask, RatExpr] = {}
        for subset, coeff in sorted((coeffs or {}).items()):
            if subset.n != degree:
                raise CompositionError(f"Subset {subset} of [{subset.n - 1}] in degree {degree}")
            if not coeff.is_zero:
                clean[subset] = coeff
        self._coeffs = clean

    @classmethod
    def zero(cls, degree: int, basis: Basis) -> QSymExpr:
        return cls(degree, basis)

    @classmethod
    def basis_element(
        cls, subset: SubsetMask, basis: Basis, coeff: RatExpr | None = None
    ) -> QSymExpr:
        return cls(subset.n, basis, {subset: RatExpr.one() if coeff is None else coeff})

    @classmethod
    def from_accumulator(
        cls, degree: int, basis: Basis, acc: RatAccumulator[SubsetMask]
    ) -> QSymExpr:
        return cls(degree, basis, acc.result())

    # ── Inspection ────────────────────────────────────────────────

    def terms(self) -> list[tuple[SubsetMask, RatExpr]]:
        return list(self._coeffs.items())

    def coefficient(self, subset: SubsetMask) -> RatExpr:
        return self._coeffs.get(subset, RatExpr.zero())

    def __iter__(self) -> Iterator[tuple[SubsetMask, RatExpr]]:
        return iter(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    # ── Arithmetic ────────────────────────────────────────────────

    def _check_compatible(self, other: QSymExpr) -> QSymExpr:
        if other.degree != self.degree:
            raise CompositionError(f"Degrees differ: {self.degree} vs {other.degree}")
        return other if other.basis is self.basis else other.to_basis(self.basis)

    def __add__(self, other: object) -> QSymExpr:
        if not isinstance(other, QSymExpr):
            return NotImplemented
        rhs = self._check_compatible(other)
        coeffs = dict(self._coeffs)
        for subset, coeff in rhs:
            coeffs[subset] = coeffs[subset] + coeff if subset in coeffs else coeff
        return QSymExpr(self.degree, self.basis, coeffs)

    def __neg__(self) -> QSymExpr:
        return QSymExpr(self.degree, self.basis, {s: -c for s, c in self})

    def __sub__(self, other: object) -> QSymExpr:
        if not isinstance(other, QSymExpr):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: RatExpr | int | Fraction) -> QSymExpr:
        return QSymExpr(self.degree, self.basis, {s: c * factor for s, c in self})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSymExpr):
            return NotImplemented
        if other.degree != self.degree:
            return False
        rhs = self._check_compatible(other)
        if self._coeffs.keys() != rhs._coeffs.keys():
            return False
        return all(coeff == rhs._coeffs[subset] for subset, coeff in self)

    __hash__ = None  # type: ignore[assignment]

    def first_difference(self, other: QSymExpr) -> SubsetMask | None:
        """Smallest subset whose coefficients differ, or None when equal."""
        rhs = self._check_compatible(other)
        for subset in sorted(self._coeffs.keys() | rhs._coeffs.keys()):
            if self.coefficient(subset) != rhs.coefficient(subset):
                return subset
        return None

    # ── Conversion and substitution ───────────────────────────────

    def to_basis(self, basis: Basis) -> QSymExpr:
        basis = Basis(basis)
        if basis is self.basis:
            return self
        return f_to_m(self) if basis is Basis.MONOMIAL else m_to_f(self)

    def specialize(self, assignment: Mapping[str, Fraction | int]) -> QSymExpr:
        """Specialize every coefficient; terms that vanish are dropped."""
        if not assignment:
            return self
        return QSymExpr(
            self.degree, self.basis, {s: c.specialize(assignment) for s, c in self}
        )

    # ── Serialization ─────────────────────────────────────────────

    def to_doc(self) -> QSymExprDoc:
        return QSymExprDoc(
            degree=self.degree,
            basis=self.basis,
            terms=[
                QSymTermDoc(
                    subset=subset.to_list(),
                    composition=list(subset_comp(subset)) if self.degree else [],
                    coeff=coeff.to_doc(),
                )
                for subset, coeff in self
            ],
        )

    @classmethod
    def from_doc(cls, doc: QSymExprDoc) -> QSymExpr:
        coeffs: dict[SubsetMask, RatExpr] = {}
        for term in doc.terms:
            subset = SubsetMask.from_members(doc.degree, term.subset)
            if term.composition and tuple(term.composition) != subset_comp(subset):
                raise CompositionError(
                    f"Composition {term.composition} does not match subset {term.subset}"
                )
            coeffs[subset] = RatExpr.from_doc(term.coeff)
        return cls(doc.degree, doc.basis, coeffs)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return "\n".join(f"{self.basis.value}_{subset}: {coeff}" for subset, coeff in self)

    def __repr__(self) -> str:
        return f"QSymExpr(degree={self.degree}, basis={self.basis.value}, terms={len(self)})"


def f_to_m(expr: QSymExpr) -> QSymExpr:
    """F_S = sum of M_S' over supersets S' of S."""
    if expr.basis is not Basis.FUNDAMENTAL:
        raise CompositionError("f_to_m expects a fundamental-basis expression")
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    for subset, coeff in expr:
        for superset in subset.supersets():
            acc.add(superset, coeff)
    return QSymExpr.from_accumulator(expr.degree, Basis.MONOMIAL, acc)


def m_to_f(expr: QSymExpr) -> QSymExpr:
    """M_S = sum over supersets S' of (-1)^|S' - S| F_S'."""
    if expr.basis is not Basis.MONOMIAL:
        raise CompositionError("m_to_f expects a monomial-basis expression")
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    for subset, coeff in expr:
        for superset in subset.supersets():
            sign = -1 if (len(superset) - len(subset)) % 2 else 1
            acc.add(superset, coeff if sign > 0 else -coeff)
    return QSymExpr.from_accumulator(expr.degree, Basis.FUNDAMENTAL, acc)


def _monomial_exponents(subset: SubsetMask, m: int) -> Iterator[tuple[int, ...]]:
    parts = subset_comp(subset)
    for indices in itertools.combinations(range(m), len(parts)):
        exps = [0] * m
        for idx, part in zip(indices, parts, strict=True):
            exps[idx] = part
        yield tuple(exps)


def _fundamental_exponents(subset: SubsetMask, m: int) -> Iterator[tuple[int, ...]]:
    """Exponents of x_i1 ... x_in over i1 <= ... <= in, strict at the positions in S."""
    n = subset.n
    exps = [0] * m

    def extend(position: int, low: int) -> Iterator[tuple[int, ...]]:
        if position > n:
            yield tuple(exps)
            return
        for idx in range(low, m):
            exps[idx] += 1
            strict = position in subset
            yield from extend(position + 1, idx + 1 if strict else idx)
            exps[idx] -= 1

    yield from extend(1, 0)


def expand_vars(expr: QSymExpr, m: int) -> XPoly:
    """The polynomial in x_1, ..., x_m obtained by truncating each basis element."""
    if m < 1:
        raise CompositionError(f"Need at least one variable, got {m}")
    expand = _monomial_exponents if expr.basis is Basis.MONOMIAL else _fundamental_exponents
    acc: RatAccumulator[tuple[int, ...]] = RatAccumulator()
    for subset, coeff in expr:
        for exps in expand(subset, m):
            acc.add(exps, coeff)
    return XPoly(m, acc.result())


def is_symmetric(expr: QSymExpr) -> bool:
    """Whether rearranged compositions always carry equal coefficients.

    Terms are grouped by sorted composition. A group is symmetric when it is
    complete (holds every distinct rearrangement) and its coefficients agree.
    """
    monomial = expr.to_basis(Basis.MONOMIAL)
    if monomial.degree == 0:
        return True
    groups: dict[tuple[int, ...], list[RatExpr]] = defaultdict(list)
    for subset, coeff in monomial:
        groups[tuple(sorted(subset_comp(subset)))].append(coeff)
    for shape, coeffs in groups.items():
        if len(coeffs) != _rearrangement_count(shape):
            return False
        if any(coeff != coeffs[0] for coeff in coeffs[1:]):
            return False
    return True


def _rearrangement_count(parts: tuple[int, ...]) -> int:
    count = math.factorial(len(parts))
    for multiplicity in Counter(parts).values():
        count //= math.factorial(multiplicity)
    return count
