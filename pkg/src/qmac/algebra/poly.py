"""Multivariate polynomials in q, t, a with exact rational coefficients.

Terms are stored as a map from exponent triples ``(e_q, e_t, e_a)`` to
``Fraction`` coefficients. Zero coefficients are never stored, so two
polynomials are equal exactly when their term maps are equal.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from fractions import Fraction
from types import MappingProxyType
from typing import TYPE_CHECKING

from qmac.constants import VARIABLES

if TYPE_CHECKING:
    from typing import Self

Exponent = tuple[int, int, int]
Scalar = int | Fraction

_ZERO_EXP: Exponent = (0, 0, 0)


def monomial_order_key(exp: Exponent) -> tuple[int, int, int, int]:
    """Graded lexicographic key with q > t > a (larger key = larger monomial)."""
    return (exp[0] + exp[1] + exp[2], exp[0], exp[1], exp[2])


def display_order_key(exp: Exponent) -> tuple[int, int, int, int]:
    """Canonical serialization order: ascending degree, then q-heavy first."""
    return (exp[0] + exp[1] + exp[2], -exp[0], -exp[1], -exp[2])


def variable_index(name: str) -> int:
    try:
        return VARIABLES.index(name)
    except ValueError:
        raise ValueError(f"Unknown variable {name!r}; expected one of {VARIABLES}") from None


class Poly:
    """An immutable polynomial in q, t, a over the rationals."""

    __slots__ = ("_terms", "_hash")

    _terms: dict[Exponent, Fraction]
    _hash: int | None

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None) -> None:
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != 3 or any(e < 0 for e in exp):
                raise ValueError(f"Exponents must be three nonnegative integers, got {exp!r}")
            key = (int(exp[0]), int(exp[1]), int(exp[2]))
            value = clean.get(key, Fraction(0)) + Fraction(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[Exponent, Fraction]) -> Self:
        """Wrap a term map that is already free of zero coefficients."""
        poly = object.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    # ── Constructors ──────────────────────────────────────────────

    @classmethod
    def zero(cls) -> Self:
        return cls._from_clean({})

    @classmethod
    def constant(cls, value: Scalar) -> Self:
        value = Fraction(value)
        return cls._from_clean({_ZERO_EXP: value} if value else {})

    @classmethod
    def monomial(cls, e_q: int = 0, e_t: int = 0, e_a: int = 0, coeff: Scalar = 1) -> Self:
        if min(e_q, e_t, e_a) < 0:
            raise ValueError(f"Negative exponent in monomial q^{e_q} t^{e_t} a^{e_a}")
        coeff = Fraction(coeff)
        return cls._from_clean({(e_q, e_t, e_a): coeff} if coeff else {})

    @classmethod
    def var(cls, name: str) -> Self:
        exp = [0, 0, 0]
        exp[variable_index(name)] = 1
        return cls._from_clean({(exp[0], exp[1], exp[2]): Fraction(1)})

    # ── Inspection ────────────────────────────────────────────────

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in canonical serialization order."""
        return sorted(self._terms.items(), key=lambda item: display_order_key(item[0]))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("The zero polynomial has no leading term")
        exp = max(self._terms, key=monomial_order_key)
        return exp, self._terms[exp]

    def degree_in(self, name: str) -> int:
        idx = variable_index(name)
        return max((exp[idx] for exp in self._terms), default=0)

    def variables(self) -> set[str]:
        return {VARIABLES[i] for exp in self._terms for i in range(3) if exp[i]}

    # ── Arithmetic ────────────────────────────────────────────────

    @classmethod
    def _coerce(cls, other: object) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, int | Fraction):
            return cls.constant(other)
        return None

    def __add__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self._terms)
        for exp, coeff in rhs._terms.items():
            value = terms.get(exp, Fraction(0)) + coeff
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)
        return Poly._from_clean(terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._from_clean({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Poly:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> Poly:
        if isinstance(other, int | Fraction):
            factor = Fraction(other)
            if not factor:
                return Poly.zero()
            return Poly._from_clean({exp: c * factor for exp, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for (a0, a1, a2), ca in self._terms.items():
            for (b0, b1, b2), cb in other._terms.items():
                key = (a0 + b0, a1 + b1, a2 + b2)
                terms[key] = terms.get(key, Fraction(0)) + ca * cb
        return Poly._from_clean({exp: c for exp, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, power: int) -> Poly:
        if power < 0:
            raise ValueError("Poly powers must be nonnegative")
        result = Poly.constant(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def divide_exact(self, divisor: Poly) -> Poly | None:
        """Return ``self / divisor`` if the division is exact, else None.

        Multivariate long division under the graded-lex order: if the divisor
        divides exactly, the leading term of every remainder is divisible by
        the divisor's leading term.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return Poly.zero()
        (l0, l1, l2), lead = divisor.leading_term()
        divisor_terms = list(divisor._terms.items())
        remainder = dict(self._terms)
        quotient: dict[Exponent, Fraction] = {}
        while remainder:
            r0, r1, r2 = max(remainder, key=monomial_order_key)
            if r0 < l0 or r1 < l1 or r2 < l2:
                return None
            s0, s1, s2 = r0 - l0, r1 - l1, r2 - l2
            factor = remainder[(r0, r1, r2)] / lead
            quotient[(s0, s1, s2)] = factor
            for (d0, d1, d2), dc in divisor_terms:
                key = (d0 + s0, d1 + s1, d2 + s2)
                value = remainder.get(key, Fraction(0)) - factor * dc
                if value:
                    remainder[key] = value
                else:
                    remainder.pop(key, None)
        return Poly._from_clean(quotient)

    # ── Substitution ──────────────────────────────────────────────

    def specialize(self, values: Mapping[str, Fraction]) -> Poly:
        """Substitute rational values for some of q, t, a."""
        if not values:
            return self
        indexed = {variable_index(name): Fraction(v) for name, v in values.items()}
        terms: dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            reduced = list(exp)
            for idx, value in indexed.items():
                if reduced[idx]:
                    coeff = coeff * value ** reduced[idx]
                    reduced[idx] = 0
            if not coeff:
                continue
            key = (reduced[0], reduced[1], reduced[2])
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return Poly._from_clean({exp: c for exp, c in terms.items() if c})

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a point assigning every variable that occurs."""
        reduced = self.specialize(values)
        if not reduced.is_constant:
            missing = ", ".join(sorted(reduced.variables()))
            raise ValueError(f"Cannot evaluate: no value for {missing}")
        return reduced.constant_term

    # ── Comparison ────────────────────────────────────────────────

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.sorted_terms())

    # ── Rendering ─────────────────────────────────────────────────

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exp, coeff in self.sorted_terms():
            mono = _monomial_text(exp)
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _monomial_text(exp: Exponent) -> str:
    factors = []
    for name, power in zip(VARIABLES, exp, strict=True):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append(f"{name}^{power}")
    return "*".join(factors)
