"""Tests for the MacdonaldEngine dispatcher."""

from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import g12_expected

from qmac.algebra.qsym import QSymExpr, f_to_m
from qmac.core import engine as engine_module
from qmac.core.engine import MacdonaldEngine
from qmac.errors import (
    CompositionError,
    PreconditionViolatedError,
    SizeLimitExceededError,
    ZeroDenominatorError,
)
from qmac.models import Basis, FormulaTag, QmacConfig
from qmac.storage.cache import ExpansionCache


class TestCompute:
    def test_direct(self):
        assert MacdonaldEngine().compute((1, 2), FormulaTag.DIRECT) == g12_expected()

    def test_fundamental_in_monomial_basis(self):
        engine = MacdonaldEngine()
        expr = engine.compute((2, 1), FormulaTag.FUNDAMENTAL, basis=Basis.MONOMIAL)
        assert expr.basis is Basis.MONOMIAL
        assert expr.terms() == engine.compute((2, 1), FormulaTag.DIRECT).terms()

    def test_native_basis_kept(self):
        expr = MacdonaldEngine().compute((1, 2), FormulaTag.FUNDAMENTAL)
        assert expr.basis is Basis.FUNDAMENTAL
        assert f_to_m(expr) == g12_expected()

    def test_specialization(self):
        expr = MacdonaldEngine().compute((1, 2), FormulaTag.DIRECT, specialization={"t": 1})
        assert len(expr) == 1

    def test_pole(self):
        engine = MacdonaldEngine()
        with pytest.raises(ZeroDenominatorError, match="vanishes"):
            engine.compute(
                (1, 2), FormulaTag.DIRECT, specialization={"q": Fraction(1), "t": Fraction(1)}
            )

    def test_weak_composition_rejected(self):
        with pytest.raises(CompositionError):
            MacdonaldEngine().compute((1, 0), FormulaTag.DIRECT)

    def test_size_guard(self):
        engine = MacdonaldEngine(QmacConfig(compute_max_n=2))
        with pytest.raises(SizeLimitExceededError) as excinfo:
            engine.compute((1, 2), FormulaTag.DIRECT)
        assert excinfo.value.n == 3
        assert excinfo.value.limit == 2

    def test_unsafe_n_bypasses_guard(self):
        engine = MacdonaldEngine(QmacConfig(compute_max_n=2))
        assert engine.compute((1, 2), FormulaTag.DIRECT, unsafe_n=True) == g12_expected()


class TestCompare:
    def test_pass(self):
        report = MacdonaldEngine().compare((1, 2), FormulaTag.FUNDAMENTAL, FormulaTag.DIRECT)
        assert report.passed
        assert report.terms_compared == 2
        assert report.first_difference is None
        assert report.specialization == {}

    def test_hall_littlewood_compares_at_q_zero(self):
        report = MacdonaldEngine().compare((2, 1), FormulaTag.HL_DIRECT, FormulaTag.DIRECT)
        assert report.passed
        assert report.specialization == {"q": "0"}

    def test_jack_pair(self):
        report = MacdonaldEngine().compare(
            (1, 2), FormulaTag.JACK_FUNDAMENTAL, FormulaTag.JACK_DIRECT
        )
        assert report.passed

    def test_jack_against_qt_rejected(self):
        with pytest.raises(PreconditionViolatedError, match="Jack"):
            MacdonaldEngine().compare((1, 2), FormulaTag.JACK_DIRECT, FormulaTag.DIRECT)

    def test_first_difference(self, monkeypatch):
        monkeypatch.setitem(
            engine_module.FORMULAS,
            FormulaTag.DIRECT,
            lambda gamma, max_n=None: QSymExpr.zero(sum(gamma), Basis.MONOMIAL),
        )
        report = MacdonaldEngine().compare((1, 2), FormulaTag.FUNDAMENTAL, FormulaTag.DIRECT)
        assert not report.passed
        diff = report.first_difference
        assert diff.subset == [1]
        assert diff.composition == [1, 2]
        assert diff.lhs == "1"
        assert diff.rhs == "0"


class TestExpand:
    def test_matches_defining_sum(self):
        engine = MacdonaldEngine()
        from_expansion = engine.expand((1, 2), FormulaTag.DIRECT, 3)
        from_definition = engine.expand((1, 2), FormulaTag.DIRECT, 3, from_definition=True)
        assert from_expansion == from_definition

    def test_fundamental_formula(self):
        engine = MacdonaldEngine()
        assert engine.expand((2, 1), FormulaTag.FUNDAMENTAL, 2) == engine.expand(
            (2, 1), FormulaTag.DIRECT, 2
        )

    def test_too_many_variables_for_definition(self):
        engine = MacdonaldEngine(QmacConfig(enumeration_max_n=3))
        with pytest.raises(SizeLimitExceededError):
            engine.expand((1, 1), FormulaTag.DIRECT, 4, from_definition=True)


class TestCache:
    def test_second_call_hits_cache(self, tmp_path, monkeypatch):
        cache = ExpansionCache(tmp_path)
        engine = MacdonaldEngine(cache=cache)
        first = engine.compute((1, 2), FormulaTag.DIRECT)
        assert len(list(tmp_path.glob("*.json"))) == 1

        def explode(gamma, max_n=None):
            raise AssertionError("expansion recomputed")

        monkeypatch.setitem(engine_module.FORMULAS, FormulaTag.DIRECT, explode)
        assert engine.compute((1, 2), FormulaTag.DIRECT) == first

    def test_malformed_entry_is_replaced(self, tmp_path):
        cache = ExpansionCache(tmp_path)
        cache.path_for(FormulaTag.DIRECT, (1, 2)).write_text('{"degree": "three"}')
        engine = MacdonaldEngine(cache=cache)
        assert engine.compute((1, 2), FormulaTag.DIRECT) == g12_expected()
        assert cache.load(FormulaTag.DIRECT, (1, 2)) == g12_expected()

    def test_cache_holds_native_basis(self, tmp_path):
        cache = ExpansionCache(tmp_path)
        engine = MacdonaldEngine(cache=cache)
        engine.compute((1, 2), FormulaTag.FUNDAMENTAL, basis=Basis.MONOMIAL)
        assert cache.load(FormulaTag.FUNDAMENTAL, (1, 2)).basis is Basis.FUNDAMENTAL

    def test_cache_dir_from_config(self, tmp_path):
        engine = MacdonaldEngine(QmacConfig(cache_dir=str(tmp_path / "c")))
        engine.compute((1,), FormulaTag.DIRECT)
        assert list((tmp_path / "c").glob("*.json"))
