"""LaTeX rendering of coefficients, expansions and truncated polynomials.

Powers of ``(1-t)`` are pulled out of numerators, giving the familiar
``\\frac{(1-t)(1+t+qt)}{1-qt^2} M_{\\{1,2\\}}`` shape.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from qmac.algebra.poly import Poly
from qmac.algebra.ratexpr import DenFactor, DenKind, RatExpr
from qmac.constants import VARIABLES

if TYPE_CHECKING:
    from qmac.algebra.poly import Exponent
    from qmac.algebra.qsym import QSymExpr
    from qmac.algebra.xpoly import XPoly

_ONE_MINUS_T = Poly({(0, 0, 0): 1, (0, 1, 0): -1})


def _power(base: str, exp: int) -> str:
    if exp == 1:
        return base
    return f"{base}^{exp}" if exp < 10 else f"{base}^{{{exp}}}"


def _scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"\\frac{{{value.numerator}}}{{{value.denominator}}}"


def _monomial(exp: Exponent) -> str:
    return "".join(_power(name, e) for name, e in zip(VARIABLES, exp, strict=True) if e)


def latex_poly(poly: Poly) -> str:
    if poly.is_zero:
        return "0"
    out = ""
    for exp, coeff in poly.sorted_terms():
        mono = _monomial(exp)
        magnitude = abs(coeff)
        body = _scalar(magnitude) if not mono or magnitude != 1 else ""
        body += mono
        if not out:
            out = f"-{body}" if coeff < 0 else body
        else:
            out += f"-{body}" if coeff < 0 else f"+{body}"
    return out


def _factor(factor: DenFactor) -> str:
    if factor.kind is DenKind.JACK_LINEAR:
        head = "a" if factor.c1 == 1 else f"{factor.c1}a"
        return f"{head}+{factor.c2}"
    return latex_poly(Poly({(0, 0, 0): 1, (factor.c1, factor.c2, 0): -factor.scale}))


def _numerator(num: Poly) -> str:
    """Numerator with (1-t) factors pulled to the front."""
    ones = 0
    rest = num
    while True:
        quotient = rest.divide_exact(_ONE_MINUS_T)
        if quotient is None or quotient.is_zero:
            break
        rest, ones = quotient, ones + 1
    head = _power("(1-t)", ones) if ones else ""
    if not head:
        return latex_poly(rest)
    if rest == 1:
        return head
    if rest == -1:
        return f"-{head}"
    if len(rest) == 1:
        text = latex_poly(rest)
        return f"{text}{head}"
    return f"{head}({latex_poly(rest)})"


def latex_ratexpr(value: RatExpr) -> str:
    num = _numerator(value.num)
    if not value.den:
        return num
    if len(value.den) == 1 and value.den[0][1] == 1:
        den = _factor(value.den[0][0])
    else:
        den = "".join(_power(f"({_factor(f)})", k) for f, k in value.den)
    return f"\\frac{{{num}}}{{{den}}}"


def _coefficient(value: RatExpr) -> str:
    """Coefficient placed before a basis element; 1 and -1 collapse."""
    if value.is_poly:
        if value.num == 1:
            return ""
        if value.num == -1:
            return "-"
        text = latex_poly(value.num)
        return f"({text}) " if len(value.num) > 1 else f"{text} "
    return f"{latex_ratexpr(value)} "


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def latex_qsym(expr: QSymExpr) -> str:
    terms = []
    for subset, coeff in expr:
        members = ",".join(str(i) for i in subset.members)
        terms.append(f"{_coefficient(coeff)}{expr.basis.value}_{{\\{{{members}\\}}}}")
    return _join(terms)


def latex_xpoly(poly: XPoly) -> str:
    terms = []
    for exps, coeff in poly:
        mono = "".join(
            _power(f"x_{{{i}}}", e) for i, e in enumerate(exps, start=1) if e
        )
        coefficient = _coefficient(coeff)
        terms.append(f"{coefficient}{mono}" if mono else latex_ratexpr(coeff))
    return _join(terms)
