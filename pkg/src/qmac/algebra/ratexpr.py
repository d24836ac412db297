"""Rational expressions with factored, structured denominators.

Every denominator that arises in the Macdonald formulas is a product of
``1 - q^a t^b`` and ``m*a + b`` factors, so a denominator is kept as a
multiset of such factors instead of an expanded polynomial. Normalization
cancels a factor whenever it divides the numerator exactly; equality is
decided by cross-multiplication, so it never depends on how far
cancellation went.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Generic, TypeVar

from qmac.algebra.poly import Exponent, Poly, Scalar, variable_index
from qmac.errors import ZeroDenominatorError
from qmac.models import RatExprDoc

if TYPE_CHECKING:
    from typing import Self

DenKey = tuple[tuple["DenFactor", int], ...]
K = TypeVar("K", bound=Hashable)


class DenKind(StrEnum):
    QT_BINOMIAL = "qt"  # 1 - scale * q^c1 * t^c2
    JACK_LINEAR = "jack"  # c1 * a + c2


@dataclass(frozen=True, order=True)
class DenFactor:
    """One structured denominator factor.

    Factors built from cells are ``1 - q^(leg+1) t^(arm+1)`` (both exponents
    at least 1, scale 1) or ``(leg+1)*a + (arm+1)``. Partial specialization
    may leave ``1 - c * t^b``, which is why QtBinomial carries a scale.
    """

    kind: DenKind
    c1: int
    c2: int
    scale: Fraction = field(default=Fraction(1))

    def __post_init__(self) -> None:
        if self.kind is DenKind.QT_BINOMIAL:
            if self.c1 < 0 or self.c2 < 0 or (self.c1 == 0 and self.c2 == 0):
                raise ValueError(f"QtBinomial exponents must be nonnegative, not both 0: {self!r}")
            if not self.scale:
                raise ValueError("QtBinomial scale must be nonzero")
        else:
            if self.c1 < 1 or self.c2 < 1:
                raise ValueError(f"JackLinear denominator needs m >= 1 and b >= 1: {self!r}")
            if self.scale != 1:
                raise ValueError("JackLinear factors carry no scale")

    @classmethod
    def qt(cls, c_q: int, c_t: int) -> DenFactor:
        """The cell factor ``1 - q^c_q t^c_t`` with ``c_q, c_t >= 1``."""
        if c_q < 1 or c_t < 1:
            raise ValueError(f"QtBinomial(c_q={c_q}, c_t={c_t}) needs both exponents >= 1")
        return cls(DenKind.QT_BINOMIAL, c_q, c_t)

    @classmethod
    def jack(cls, m: int, b: int) -> DenFactor:
        """The Jack factor ``m*a + b``."""
        return cls(DenKind.JACK_LINEAR, m, b)

    def as_poly(self) -> Poly:
        return _factor_poly(self)

    def specialize(self, values: Mapping[str, Fraction]) -> DenFactor | Fraction:
        """Substitute values; returns a constant when no variable survives."""
        if self.kind is DenKind.JACK_LINEAR:
            if "a" in values:
                return self.c1 * values["a"] + self.c2
            return self
        scale, c_q, c_t = self.scale, self.c1, self.c2
        if "q" in values and c_q:
            scale *= values["q"] ** c_q
            c_q = 0
        if "t" in values and c_t:
            scale *= values["t"] ** c_t
            c_t = 0
        if not scale:
            return Fraction(1)
        if c_q == 0 and c_t == 0:
            return 1 - scale
        return DenFactor(DenKind.QT_BINOMIAL, c_q, c_t, scale)

    def to_list(self, multiplicity: int) -> list[int | str]:
        entry: list[int | str] = [self.kind.value, self.c1, self.c2, multiplicity]
        if self.scale != 1:
            entry.append(str(self.scale))
        return entry

    @classmethod
    def from_list(cls, entry: list[int | str]) -> tuple[DenFactor, int]:
        if len(entry) not in (4, 5):
            raise ValueError(f"Denominator entry must have 4 or 5 fields: {entry!r}")
        kind = DenKind(str(entry[0]))
        scale = Fraction(str(entry[4])) if len(entry) == 5 else Fraction(1)
        return cls(kind, int(entry[1]), int(entry[2]), scale), int(entry[3])

    def __str__(self) -> str:
        if self.kind is DenKind.JACK_LINEAR:
            head = "a" if self.c1 == 1 else f"{self.c1}*a"
            return f"({head}+{self.c2})"
        mono = str(Poly.monomial(self.c1, self.c2, 0, self.scale))
        return f"(1-{mono})" if not mono.startswith("-") else f"(1+{mono[1:]})"


@lru_cache(maxsize=4096)
def _factor_poly(factor: DenFactor) -> Poly:
    if factor.kind is DenKind.JACK_LINEAR:
        return Poly({(0, 0, 1): factor.c1, (0, 0, 0): factor.c2})
    return Poly({(0, 0, 0): 1, (factor.c1, factor.c2, 0): -factor.scale})


def _factor_product(factors: Mapping[DenFactor, int]) -> Poly:
    result = Poly.constant(1)
    for factor, mult in sorted(factors.items()):
        if mult > 0:
            result = result * factor.as_poly() ** mult
    return result


def _den_key(counter: Mapping[DenFactor, int]) -> DenKey:
    return tuple(sorted((f, k) for f, k in counter.items() if k > 0))


class RatExpr:
    """An exact element of Q(q, t, a) with a factored denominator.

    Values are immutable and always normalized: no denominator factor divides
    the numerator, and zero has an empty denominator.
    """

    __slots__ = ("num", "den")

    num: Poly
    den: DenKey

    def __init__(
        self,
        num: Poly | Scalar = 0,
        den: Iterable[DenFactor] | Mapping[DenFactor, int] = (),
    ) -> None:
        counter = Counter(den) if not isinstance(den, Mapping) else Counter(dict(den))
        numerator = num if isinstance(num, Poly) else Poly.constant(num)
        self.num, self.den = _normalize(numerator, counter)

    @classmethod
    def _raw(cls, num: Poly, den: DenKey) -> Self:
        expr = object.__new__(cls)
        expr.num = num
        expr.den = den
        return expr

    @classmethod
    def zero(cls) -> Self:
        return cls._raw(Poly.zero(), ())

    @classmethod
    def one(cls) -> Self:
        return cls._raw(Poly.constant(1), ())

    @classmethod
    def monomial(cls, e_q: int = 0, e_t: int = 0, e_a: int = 0, coeff: Scalar = 1) -> Self:
        return cls._raw(Poly.monomial(e_q, e_t, e_a, coeff), ())

    # ── Inspection ────────────────────────────────────────────────

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_poly(self) -> bool:
        return not self.den

    @property
    def den_counter(self) -> Counter[DenFactor]:
        return Counter(dict(self.den))

    def den_poly(self) -> Poly:
        return _factor_product(dict(self.den))

    def normalize(self) -> RatExpr:
        """Re-run cancellation; values are kept normalized, so this is idempotent."""
        num, den = _normalize(self.num, self.den_counter)
        return RatExpr._raw(num, den)

    # ── Arithmetic ────────────────────────────────────────────────

    @staticmethod
    def _coerce(other: object) -> RatExpr | None:
        if isinstance(other, RatExpr):
            return other
        if isinstance(other, Poly):
            return RatExpr._raw(other, ())
        if isinstance(other, int | Fraction):
            return RatExpr._raw(Poly.constant(other), ())
        return None

    def __add__(self, other: object) -> RatExpr:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero:
            return self
        if self.is_zero:
            return rhs
        if self.den == rhs.den:
            num, den = _normalize(self.num + rhs.num, self.den_counter)
            return RatExpr._raw(num, den)
        left, right = self.den_counter, rhs.den_counter
        common = left | right
        num = self.num * _factor_product(common - left) + rhs.num * _factor_product(
            common - right
        )
        num, den = _normalize(num, common)
        return RatExpr._raw(num, den)

    __radd__ = __add__

    def __neg__(self) -> RatExpr:
        return RatExpr._raw(-self.num, self.den)

    def __sub__(self, other: object) -> RatExpr:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> RatExpr:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> RatExpr:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero or rhs.is_zero:
            return RatExpr.zero()
        if not rhs.den and rhs.num.is_constant:
            return RatExpr._raw(self.num * rhs.num.constant_term, self.den)
        num, den = _normalize(self.num * rhs.num, self.den_counter + rhs.den_counter)
        return RatExpr._raw(num, den)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> RatExpr:
        if power < 0:
            raise ValueError("RatExpr powers must be nonnegative")
        result: RatExpr = RatExpr.one()
        for _ in range(power):
            result = result * self
        return result

    def divide_by_factor(self, factor: DenFactor) -> RatExpr:
        """Append ``factor`` to the denominator and normalize."""
        if self.is_zero:
            return self
        counter = self.den_counter
        counter[factor] += 1
        num, den = _normalize(self.num, counter)
        return RatExpr._raw(num, den)

    def __truediv__(self, other: object) -> RatExpr:
        if isinstance(other, DenFactor):
            return self.divide_by_factor(other)
        if isinstance(other, int | Fraction):
            if not other:
                raise ZeroDivisionError("RatExpr division by zero")
            return RatExpr._raw(self.num * (1 / Fraction(other)), self.den)
        return NotImplemented

    # ── Substitution ──────────────────────────────────────────────

    def specialize(self, assignment: Mapping[str, Scalar]) -> RatExpr:
        """Substitute exact values for some of q, t, a.

        Raises:
            ZeroDenominatorError: an assigned value annihilates a denominator factor.
        """
        if not assignment:
            return self
        values = {name: Fraction(v) for name, v in assignment.items()}
        for name in values:
            variable_index(name)
        scale = Fraction(1)
        counter: Counter[DenFactor] = Counter()
        for factor, mult in self.den:
            reduced = factor.specialize(values)
            if isinstance(reduced, DenFactor):
                counter[reduced] += mult
            elif not reduced:
                raise ZeroDenominatorError(factor, values)
            else:
                scale *= reduced**mult
        num = self.num.specialize(values) * (1 / scale)
        return RatExpr(num, counter)

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        value = self.specialize(assignment)
        if not value.is_poly or not value.num.is_constant:
            raise ValueError("evaluate() needs a value for every variable that occurs")
        return value.num.constant_term

    # ── Comparison ────────────────────────────────────────────────

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.den == rhs.den:
            return self.num == rhs.num
        left, right = self.den_counter, rhs.den_counter
        common = left & right
        return self.num * _factor_product(right - common) == rhs.num * _factor_product(
            left - common
        )

    __hash__ = None  # type: ignore[assignment]

    # ── Serialization ─────────────────────────────────────────────

    def to_doc(self) -> RatExprDoc:
        return RatExprDoc(
            num=[(e[0], e[1], e[2], str(c)) for e, c in self.num.sorted_terms()],
            den=[factor.to_list(mult) for factor, mult in self.den],
        )

    @classmethod
    def from_doc(cls, doc: RatExprDoc) -> RatExpr:
        terms: dict[Exponent, Scalar] = {
            (e_q, e_t, e_a): Fraction(coeff) for e_q, e_t, e_a, coeff in doc.num
        }
        counter: Counter[DenFactor] = Counter()
        for entry in doc.den:
            factor, mult = DenFactor.from_list(entry)
            counter[factor] += mult
        return cls(Poly(terms), counter)

    def __str__(self) -> str:
        num = str(self.num)
        if not self.den:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        factors = " ".join(f"{f}^{k}" if k > 1 else str(f) for f, k in self.den)
        return f"{num} / {factors}"

    def __repr__(self) -> str:
        return f"RatExpr({self})"


def _normalize(num: Poly, den: Counter[DenFactor]) -> tuple[Poly, DenKey]:
    """Cancel every denominator factor that divides the numerator exactly."""
    if num.is_zero:
        return num, ()
    remaining: Counter[DenFactor] = Counter()
    for factor, mult in sorted(den.items()):
        if mult <= 0:
            continue
        divisor = factor.as_poly()
        while mult:
            quotient = num.divide_exact(divisor)
            if quotient is None:
                break
            num = quotient
            mult -= 1
        if mult:
            remaining[factor] = mult
    return num, _den_key(remaining)


class RatAccumulator(Generic[K]):
    """Keyed sums of RatExprs.

    Summands are grouped by denominator so that numerators add as plain term
    maps; normalization and cross-denominator addition run once, in
    :meth:`result`.
    """

    def __init__(self) -> None:
        self._groups: dict[K, dict[DenKey, dict[Exponent, Fraction]]] = {}

    def add(self, key: K, value: RatExpr) -> None:
        if not value.is_zero:
            self.add_parts(key, value.num, value.den)

    def add_parts(self, key: K, num: Poly, den: DenKey | Mapping[DenFactor, int]) -> None:
        """Add ``num / den`` without normalizing; ``den`` may be any factor multiset."""
        if num.is_zero:
            return
        den_key = den if isinstance(den, tuple) else _den_key(den)
        terms = self._groups.setdefault(key, {}).setdefault(den_key, {})
        for exp, coeff in num.terms.items():
            value = terms.get(exp, Fraction(0)) + coeff
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)

    def __len__(self) -> int:
        return len(self._groups)

    def result(self) -> dict[K, RatExpr]:
        totals: dict[K, RatExpr] = {}
        for key, groups in self._groups.items():
            total = RatExpr.zero()
            for den_key, terms in groups.items():
                if terms:
                    total = total + RatExpr(Poly(terms), dict(den_key))
            if not total.is_zero:
                totals[key] = total
        return totals
