"""Expansions of quasisymmetric Macdonald polynomials G_gamma.

Each formula sums per-filling contributions into a ``RatAccumulator`` keyed
by the subset of the basis element, so coefficients are normalized once per
subset rather than once per filling.

Formulas:
- ``g_direct``: packed non-attacking fillings, monomial basis.
- ``g_fundamental``: standard fillings with a subset sum over W(tau), fundamental basis.
- ``g_hl_direct`` / ``g_hl_fundamental``: the q = 0 specialization over ST₀ / ST₁.
- ``jack_direct`` / ``jack_fundamental``: the Jack analogues in the parameter a.
- ``e_sigma`` / ``g_truncated``: the defining sum over weak compositions,
  truncated to finitely many variables.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections import Counter
from collections.abc import Sequence

from qmac.algebra.poly import Poly
from qmac.algebra.qsym import QSymExpr
from qmac.algebra.ratexpr import DenFactor, RatAccumulator, RatExpr
from qmac.algebra.xpoly import XPoly
from qmac.combinatorics.fillings import (
    ONE_MINUS_T,
    StandardFilling,
    cell_factor,
    check_size,
    coinv,
    content,
    des_set,
    enumerate_fillings,
    enumerate_packed_nat,
    maj,
    weight_parts,
    x_monomial,
)
from qmac.combinatorics.shapes import (
    Cell,
    Diagram,
    SubsetMask,
    as_composition,
    as_strong,
    beta_perm,
    collapse,
    h_stat,
    weak_compositions,
)
from qmac.combinatorics.standard import (
    coinv_des,
    enumerate_st,
    enumerate_st0,
    enumerate_st1,
    nu_set,
    omega,
    v_set,
    w_set,
)
from qmac.errors import CompositionError, PreconditionViolatedError
from qmac.models import Basis

logger = logging.getLogger(__name__)

MINUS_T = Poly.monomial(0, 1, 0, -1)
MAX_LEMMA_FACTORS = 12


def _qt_numerator(diagram: Diagram, u: Cell) -> Poly:
    """1 - q^(leg+1) t^arm."""
    return Poly({(0, 0, 0): 1, (diagram.leg(u) + 1, diagram.arm(u), 0): -1})


def _jack_linear(diagram: Diagram, u: Cell, shift: int) -> Poly:
    """a*(leg+1) + arm + shift."""
    return Poly({(0, 0, 1): diagram.leg(u) + 1, (0, 0, 0): diagram.arm(u) + shift})


def _jack_factor(diagram: Diagram, u: Cell) -> DenFactor:
    return DenFactor.jack(diagram.leg(u) + 1, diagram.arm(u) + 1)


# ──────────────────────────────────────────────
# (q, t) expansions
# ──────────────────────────────────────────────


def g_direct(gamma: Sequence[int], *, max_n: int | None = None) -> QSymExpr:
    """Sum of weight(T) M_content(T) over packed NAT(gamma)."""
    parts = as_strong(gamma)
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    count = 0
    for filling in enumerate_packed_nat(parts, max_n=max_n):
        num, den = weight_parts(filling)
        acc.add_parts(content(filling), num, den)
        count += 1
    logger.debug("g_direct%s: %d packed fillings, %d subsets", parts, count, len(acc))
    return QSymExpr.from_accumulator(sum(parts), Basis.MONOMIAL, acc)


def _w_cells(tau: StandardFilling, w: SubsetMask) -> set[Cell]:
    return {tau.cell_of[i] for i in w}


def g_fundamental(gamma: Sequence[int], *, max_n: int | None = None) -> QSymExpr:
    """Fundamental expansion as a sum over ST(gamma) and subsets U of W(tau)."""
    parts = as_strong(gamma)
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    count = 0
    for tau in enumerate_st(parts, max_n=max_n):
        count += 1
        d = tau.diagram
        w, v = w_set(tau), v_set(tau)
        skipped = _w_cells(tau, w)
        pre_den: Counter[DenFactor] = Counter()
        for u in d.hat_cells:
            if u not in skipped:
                pre_den[cell_factor(d, u)] += 1
        pre_num = Poly.monomial(maj(tau), coinv(tau)) * ONE_MINUS_T ** sum(pre_den.values())
        for subset in w.subsets():
            num, den = pre_num, pre_den.copy()
            for i in subset:
                u = tau.cell_of[i]
                num = num * _qt_numerator(d, u) * MINUS_T
                den[cell_factor(d, u)] += 1
            acc.add_parts(v | subset, num, den)
    logger.debug("g_fundamental%s: %d standard fillings, %d subsets", parts, count, len(acc))
    return QSymExpr.from_accumulator(sum(parts), Basis.FUNDAMENTAL, acc)


def g_hl_direct(gamma: Sequence[int], *, max_n: int | None = None) -> QSymExpr:
    """G_gamma(X; 0, t) as a sum over descent-free standard fillings."""
    parts = as_strong(gamma)
    h = h_stat(parts)
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    for tau in enumerate_st0(parts, max_n=max_n):
        w, v = w_set(tau), v_set(tau)
        pre = Poly.monomial(0, coinv(tau)) * ONE_MINUS_T ** (h - len(w))
        for subset in w.subsets():
            acc.add_parts(v | subset, pre * MINUS_T ** len(subset), ())
    return QSymExpr.from_accumulator(sum(parts), Basis.FUNDAMENTAL, acc)


def g_hl_fundamental(gamma: Sequence[int], *, max_n: int | None = None) -> QSymExpr:
    """G_gamma(X; 0, t) as a signed sum over ST₁(gamma), one F term per filling."""
    parts = as_strong(gamma)
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    for tau in enumerate_st1(parts, max_n=max_n):
        subset, num = hl_term(tau)
        acc.add_parts(subset, num, ())
    return QSymExpr.from_accumulator(sum(parts), Basis.FUNDAMENTAL, acc)


def hl_term(tau: StandardFilling) -> tuple[SubsetMask, Poly]:
    """The term (1-t)^omega (-t)^|Des| t^(coinv - coinv_des) F_Nu of one ST₁ filling."""
    num = (
        ONE_MINUS_T ** omega(tau)
        * MINUS_T ** len(des_set(tau))
        * Poly.monomial(0, coinv(tau) - coinv_des(tau))
    )
    return nu_set(tau), num


# ──────────────────────────────────────────────
# Jack expansions
# ──────────────────────────────────────────────


def jack_direct(gamma: Sequence[int], *, max_n: int | None = None) -> QSymExpr:
    """Sum over packed NAT(gamma) of the product of a(leg+1)+arm+1 over repeated cells."""
    parts = as_strong(gamma)
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    for filling in enumerate_packed_nat(parts, max_n=max_n):
        d = filling.diagram
        coeff = Poly.constant(1)
        for u in d.hat_cells:
            if filling[u] == filling[Cell(u.row - 1, u.col)]:
                coeff = coeff * _jack_linear(d, u, 1)
        acc.add_parts(content(filling), coeff, ())
    return QSymExpr.from_accumulator(sum(parts), Basis.MONOMIAL, acc)


def jack_fundamental(gamma: Sequence[int], *, max_n: int | None = None) -> QSymExpr:
    """Fundamental expansion in the Jack parameter a."""
    parts = as_strong(gamma)
    acc: RatAccumulator[SubsetMask] = RatAccumulator()
    for tau in enumerate_st(parts, max_n=max_n):
        d = tau.diagram
        w, v = w_set(tau), v_set(tau)
        pre = Poly.constant(1)
        for i in w:
            pre = pre * _jack_linear(d, tau.cell_of[i], 1)
        for subset in w.subsets():
            num = pre * (-1) ** len(subset)
            den: Counter[DenFactor] = Counter()
            for i in subset:
                u = tau.cell_of[i]
                num = num * _jack_linear(d, u, 0)
                den[_jack_factor(d, u)] += 1
            acc.add_parts(v | subset, num, den)
    return QSymExpr.from_accumulator(sum(parts), Basis.FUNDAMENTAL, acc)


# ──────────────────────────────────────────────
# The defining sum, truncated to m variables
# ──────────────────────────────────────────────


def e_sigma(alpha: Sequence[int], *, max_n: int | None = None) -> XPoly:
    """Weighted sum of x^T over NAT(alpha⁺) fillings in [m] with bottom row fixed by beta(alpha).

    The bottom row is the last l(alpha⁺) entries of beta(alpha), where
    m = len(alpha).
    """
    weak = as_composition(alpha)
    parts = collapse(weak)
    if not parts:
        raise CompositionError(f"{weak} has no nonzero part")
    m = len(weak)
    check_size(max(sum(parts), m), max_n)
    bottom = beta_perm(weak)[m - len(parts) :]
    acc: RatAccumulator[tuple[int, ...]] = RatAccumulator()
    for filling in enumerate_fillings(Diagram.for_composition(parts), m, bottom_row=bottom):
        num, den = weight_parts(filling)
        acc.add_parts(x_monomial(filling, m), num, den)
    return XPoly(m, acc.result())


def g_truncated(gamma: Sequence[int], m: int, *, max_n: int | None = None) -> XPoly:
    """Sum of e_sigma(alpha) over weak alpha of length m with alpha⁺ = gamma."""
    parts = as_strong(gamma)
    if m < len(parts):
        return XPoly.zero(max(m, 0))
    check_size(max(sum(parts), m), max_n)
    acc: RatAccumulator[tuple[int, ...]] = RatAccumulator()
    for alpha in weak_compositions(parts, m):
        for exps, coeff in e_sigma(alpha, max_n=max_n):
            acc.add(exps, coeff)
    return XPoly(m, acc.result())


# ──────────────────────────────────────────────
# Identities used by the verify suite
# ──────────────────────────────────────────────


def binomial_lemma_check(factors: Sequence[tuple[int, int]]) -> bool:
    """Check prod (1-t)/(1-q^(L+1)t^(A+1)) against its expansion over subsets.

    Each factor is a (leg, arm) pair; the right side is
    sum over U of (-t)^|U| prod over U of (1-q^(L+1)t^A)/(1-q^(L+1)t^(A+1)).
    """
    if len(factors) > MAX_LEMMA_FACTORS:
        raise PreconditionViolatedError(
            f"At most {MAX_LEMMA_FACTORS} factors are supported, got {len(factors)}"
        )
    if any(leg < 0 or arm < 0 for leg, arm in factors):
        raise PreconditionViolatedError(f"Legs and arms must be nonnegative: {list(factors)}")
    den = Counter(DenFactor.qt(leg + 1, arm + 1) for leg, arm in factors)
    lhs = RatExpr(ONE_MINUS_T ** len(factors), den)
    acc: RatAccumulator[int] = RatAccumulator()
    for size in range(len(factors) + 1):
        for chosen in itertools.combinations(range(len(factors)), size):
            num = MINUS_T**size
            sub_den: Counter[DenFactor] = Counter()
            for idx in chosen:
                leg, arm = factors[idx]
                num = num * Poly({(0, 0, 0): 1, (leg + 1, arm, 0): -1})
                sub_den[DenFactor.qt(leg + 1, arm + 1)] += 1
            acc.add_parts(0, num, sub_den)
    rhs = acc.result().get(0, RatExpr.zero())
    return lhs == rhs


def random_lemma_factors(
    rng: random.Random, max_size: int = 5, max_value: int = 3
) -> list[tuple[int, int]]:
    """A random multiset of (leg, arm) pairs for :func:`binomial_lemma_check`."""
    size = rng.randint(0, max_size)
    return [(rng.randint(0, max_value), rng.randint(0, max_value)) for _ in range(size)]


def destandardized_weight(tau: StandardFilling, subset: SubsetMask) -> RatExpr:
    """Closed form of weight(destandardize(tau, subset)).

    Cells outside W(tau) always carry their factor; a cell of W(tau) carries
    it only when its value lies in ``subset``.
    """
    if not v_set(tau).issubset(subset):
        raise PreconditionViolatedError(f"{subset} does not contain V(tau) = {v_set(tau)}")
    d = tau.diagram
    w = w_set(tau)
    skipped = _w_cells(tau, w)
    den: Counter[DenFactor] = Counter()
    for u in d.hat_cells:
        if u not in skipped:
            den[cell_factor(d, u)] += 1
    for i in subset & w:
        den[cell_factor(d, tau.cell_of[i])] += 1
    num = Poly.monomial(maj(tau), coinv(tau)) * ONE_MINUS_T ** sum(den.values())
    return RatExpr(num, den)

