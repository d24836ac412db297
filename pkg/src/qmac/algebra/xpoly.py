"""Polynomials in finitely many x-variables with RatExpr coefficients."""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from fractions import Fraction

from qmac.algebra.ratexpr import RatExpr
from qmac.errors import CompositionError
from qmac.models import XPolyDoc, XPolyTermDoc

XExponent = tuple[int, ...]


class XPoly:
    """An exact polynomial in x_1, ..., x_m.

    Terms iterate with the x_1-heaviest exponent vector first.
    """

    __slots__ = ("nvars", "_terms")

    nvars: int
    _terms: dict[XExponent, RatExpr]

    def __init__(self, nvars: int, terms: Mapping[XExponent, RatExpr] | None = None) -> None:
        if nvars < 0:
            raise CompositionError(f"Variable count must be nonnegative: {nvars}")
        self.nvars = nvars
        clean: dict[XExponent, RatExpr] = {}
        for exps, coeff in sorted((terms or {}).items(), key=lambda item: item[0], reverse=True):
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise CompositionError(f"Exponent vector {exps} does not fit {nvars} variables")
            if not coeff.is_zero:
                clean[tuple(exps)] = coeff
        self._terms = clean

    @classmethod
    def zero(cls, nvars: int) -> XPoly:
        return cls(nvars)

    def coefficient(self, exps: XExponent) -> RatExpr:
        return self._terms.get(tuple(exps), RatExpr.zero())

    def terms(self) -> list[tuple[XExponent, RatExpr]]:
        return list(self._terms.items())

    def __iter__(self) -> Iterator[tuple[XExponent, RatExpr]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: object) -> XPoly:
        if not isinstance(other, XPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise CompositionError(f"Variable counts differ: {self.nvars} vs {other.nvars}")
        terms = dict(self._terms)
        for exps, coeff in other:
            terms[exps] = terms[exps] + coeff if exps in terms else coeff
        return XPoly(self.nvars, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        if self.nvars != other.nvars or self._terms.keys() != other._terms.keys():
            return False
        return all(coeff == other._terms[exps] for exps, coeff in self)

    __hash__ = None  # type: ignore[assignment]

    def first_difference(self, other: XPoly) -> XExponent | None:
        for exps in sorted(self._terms.keys() | other._terms.keys(), reverse=True):
            if self.coefficient(exps) != other.coefficient(exps):
                return exps
        return None

    def specialize(self, assignment: Mapping[str, Fraction | int]) -> XPoly:
        if not assignment:
            return self
        return XPoly(self.nvars, {e: c.specialize(assignment) for e, c in self})

    def to_doc(self) -> XPolyDoc:
        return XPolyDoc(
            vars=self.nvars,
            terms=[XPolyTermDoc(exponents=list(e), coeff=c.to_doc()) for e, c in self],
        )

    @classmethod
    def from_doc(cls, doc: XPolyDoc) -> XPoly:
        return cls(doc.vars, {tuple(t.exponents): RatExpr.from_doc(t.coeff) for t in doc.terms})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return "\n".join(f"{monomial_text(e)}: {c}" for e, c in self)


def monomial_text(exps: XExponent) -> str:
    """``x1*x2^2`` style rendering; the empty monomial renders as ``1``."""
    factors = [
        f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps, start=1) if e
    ]
    return "*".join(factors) or "1"
