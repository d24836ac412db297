"""Formula dispatcher, the entry point behind compute, compare and expand.

The MacdonaldEngine maps a FormulaTag to its expansion, applies the size
guard from the configuration, consults the optional expansion cache, and
converts or specializes results on request.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from fractions import Fraction

from qmac.algebra.qsym import QSymExpr, expand_vars
from qmac.algebra.xpoly import XPoly
from qmac.combinatorics.shapes import Composition, as_strong, subset_comp
from qmac.core.macdonald import (
    g_direct,
    g_fundamental,
    g_hl_direct,
    g_hl_fundamental,
    g_truncated,
    jack_direct,
    jack_fundamental,
)
from qmac.errors import PreconditionViolatedError, SizeLimitExceededError
from qmac.models import (
    Basis,
    CoefficientDiff,
    CompareReport,
    FormulaTag,
    QmacConfig,
)
from qmac.storage.cache import ExpansionCache

logger = logging.getLogger(__name__)

Specialization = Mapping[str, Fraction]

FORMULAS: dict[FormulaTag, Callable[..., QSymExpr]] = {
    FormulaTag.DIRECT: g_direct,
    FormulaTag.FUNDAMENTAL: g_fundamental,
    FormulaTag.HL_DIRECT: g_hl_direct,
    FormulaTag.HL_FUNDAMENTAL: g_hl_fundamental,
    FormulaTag.JACK_DIRECT: jack_direct,
    FormulaTag.JACK_FUNDAMENTAL: jack_fundamental,
}


class MacdonaldEngine:
    """Computes, compares and expands G_gamma under a QmacConfig."""

    def __init__(
        self,
        config: QmacConfig | None = None,
        *,
        cache: ExpansionCache | None = None,
    ):
        self._config = config if config is not None else QmacConfig()
        if cache is None and self._config.cache_dir:
            cache = ExpansionCache(self._config.cache_dir)
        self._cache = cache

    @property
    def config(self) -> QmacConfig:
        return self._config

    def _enumeration_limit(self, gamma: Composition, unsafe_n: bool) -> int:
        """Bound handed to the enumerators, after applying the compute guard."""
        n = sum(gamma)
        if unsafe_n:
            return max(n, self._config.enumeration_max_n)
        if n > self._config.compute_max_n:
            raise SizeLimitExceededError(n, self._config.compute_max_n)
        return self._config.enumeration_max_n

    # ── Operations ────────────────────────────────────────────────

    def compute(
        self,
        gamma: Sequence[int],
        formula: FormulaTag,
        *,
        basis: Basis | None = None,
        specialization: Specialization | None = None,
        unsafe_n: bool = False,
    ) -> QSymExpr:
        """Expand G_gamma by ``formula``, optionally converted and specialized.

        Raises:
            SizeLimitExceededError: |gamma| exceeds ``compute_max_n`` without ``unsafe_n``.
            ZeroDenominatorError: the specialization hits a pole.
        """
        parts = as_strong(gamma)
        formula = FormulaTag(formula)
        limit = self._enumeration_limit(parts, unsafe_n)
        expr = self._cache.load(formula, parts) if self._cache is not None else None
        if expr is None:
            logger.info("Computing %s expansion of G%s", formula.value, parts)
            expr = FORMULAS[formula](parts, max_n=limit)
            if self._cache is not None:
                self._cache.store(formula, parts, expr)
        else:
            logger.debug("Cache hit for %s %s", formula.value, parts)
        if basis is not None:
            expr = expr.to_basis(basis)
        if specialization:
            expr = expr.specialize(specialization)
        return expr

    def compare(
        self,
        gamma: Sequence[int],
        lhs: FormulaTag,
        rhs: FormulaTag,
        *,
        specialization: Specialization | None = None,
        unsafe_n: bool = False,
    ) -> CompareReport:
        """Diff two expansions of G_gamma in the monomial basis.

        Pairing a Hall-Littlewood formula with a (q, t) formula compares at
        q = 0. Jack expansions only compare with Jack expansions.
        """
        parts = as_strong(gamma)
        lhs, rhs = FormulaTag(lhs), FormulaTag(rhs)
        if lhs.is_jack != rhs.is_jack:
            raise PreconditionViolatedError(
                f"Cannot compare {lhs.value} with {rhs.value}: only one is a Jack expansion"
            )
        values = dict(specialization or {})
        if (lhs.is_hall_littlewood or rhs.is_hall_littlewood) and "q" not in values:
            logger.info("Hall-Littlewood formula involved; comparing at q=0")
            values["q"] = Fraction(0)
        left = self.compute(parts, lhs, basis=Basis.MONOMIAL, unsafe_n=unsafe_n)
        right = self.compute(parts, rhs, basis=Basis.MONOMIAL, unsafe_n=unsafe_n)
        left, right = left.specialize(values), right.specialize(values)

        subset = left.first_difference(right)
        compared = len({s for s, _ in left} | {s for s, _ in right})
        diff = None
        if subset is not None:
            diff = CoefficientDiff(
                subset=subset.to_list(),
                composition=list(subset_comp(subset)),
                lhs=str(left.coefficient(subset)),
                rhs=str(right.coefficient(subset)),
            )
        return CompareReport(
            gamma=list(parts),
            lhs=lhs,
            rhs=rhs,
            specialization={k: str(v) for k, v in sorted(values.items())},
            passed=diff is None,
            terms_compared=compared,
            first_difference=diff,
        )

    def expand(
        self,
        gamma: Sequence[int],
        formula: FormulaTag,
        m: int,
        *,
        specialization: Specialization | None = None,
        from_definition: bool = False,
        unsafe_n: bool = False,
    ) -> XPoly:
        """G_gamma in m variables, from an expansion or from the defining sum."""
        parts = as_strong(gamma)
        if from_definition:
            limit = self._enumeration_limit(parts, unsafe_n)
            if m > limit and not unsafe_n:
                raise SizeLimitExceededError(m, limit)
            logger.info("Summing the defining expansion of G%s in %d variables", parts, m)
            poly = g_truncated(parts, m, max_n=max(limit, m))
        else:
            poly = expand_vars(self.compute(parts, formula, unsafe_n=unsafe_n), m)
        return poly.specialize(specialization) if specialization else poly
