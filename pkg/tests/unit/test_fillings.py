"""Tests for fillings, their statistics, and NAT enumeration."""

from __future__ import annotations

import pytest
from conftest import ONE_MINUS_QT2, ONE_MINUS_T

from qmac.algebra.poly import Poly
from qmac.algebra.ratexpr import RatExpr
from qmac.combinatorics.fillings import (
    Filling,
    StandardFilling,
    bottom_row_ok,
    check_size,
    coinv,
    content,
    des_set,
    enumerate_fillings,
    enumerate_packed_nat,
    is_coinversion,
    is_nat,
    is_non_attacking,
    maj,
    weight,
    x_monomial,
)
from qmac.combinatorics.shapes import Cell, Diagram, SubsetMask
from qmac.errors import CompositionError, PreconditionViolatedError, SizeLimitExceededError

EXAMPLE = "1;4,5,3;2,3,1,2"


class TestFilling:
    def test_text_round_trip(self):
        filling = Filling.from_text(EXAMPLE)
        assert filling.diagram.heights == (1, 3, 4)
        assert filling.to_text() == EXAMPLE
        assert filling[Cell(4, 3)] == 2

    def test_reading_word(self):
        assert Filling.from_text(EXAMPLE).reading_word == (2, 3, 1, 5, 3, 1, 4, 2)

    def test_json_form(self):
        filling = Filling.from_text("1;2,3")
        assert filling.to_json() == {"shape": [1, 2], "cols": [[1], [2, 3]]}
        assert Filling.from_json(filling.to_json()) == filling

    def test_json_shape_mismatch(self):
        with pytest.raises(CompositionError):
            Filling.from_json({"shape": [2, 1], "cols": [[1], [2, 3]]})

    def test_columns_must_fit(self):
        with pytest.raises(CompositionError):
            Filling(Diagram((1, 2)), ((1,), (2,)))

    def test_entries_positive(self):
        with pytest.raises(CompositionError):
            Filling.from_text("0;1,2")

    def test_packed(self):
        assert Filling.from_text("1;2,2").is_packed
        assert not Filling.from_text("1;3,3").is_packed

    def test_standard_filling(self):
        tau = StandardFilling.from_text("1;3,2")
        assert tau.n == 3
        assert tau.cell_of[2] == Cell(2, 2)
        with pytest.raises(CompositionError):
            StandardFilling.from_text("1;2,2")


class TestPredicates:
    def test_non_attacking(self):
        assert is_non_attacking(Filling.from_text(EXAMPLE))

    def test_same_row_attack(self):
        assert not is_non_attacking(Filling.from_text("1;1,2"))

    def test_diagonal_attack(self):
        # (2,2) sits up and to the right of (1,1)
        assert not is_non_attacking(Filling.from_text("1;2,1"))

    def test_bottom_row_follows_beta(self):
        filling = Filling.from_text("1;2,2")
        assert bottom_row_ok(filling, (1, 2))
        assert not bottom_row_ok(filling, (2, 1))

    def test_nat(self):
        assert is_nat(Filling.from_text("1;2,2"), (1, 2))
        assert not is_nat(Filling.from_text("1;2,2"), (2, 1))
        assert not is_nat(Filling.from_text("2;1"), (1, 2))


class TestStatistics:
    def test_descents_and_maj(self):
        filling = Filling.from_text("1;2,3")
        assert des_set(filling) == (Cell(2, 2),)
        assert maj(filling) == 1
        assert coinv(filling) == 1

    def test_no_descent(self):
        filling = Filling.from_text("1;3,2")
        assert des_set(filling) == ()
        assert maj(filling) == 0
        assert coinv(filling) == 0

    def test_coinversion_triples(self):
        assert is_coinversion(1, 3, 2)
        assert is_coinversion(3, 2, 1)
        assert is_coinversion(2, 1, 3)
        assert not is_coinversion(3, 1, 2)
        assert not is_coinversion(2, 2, 1)

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("1;2,2", RatExpr.one()),
            ("1;2,3", RatExpr(Poly.monomial(1, 1) * ONE_MINUS_T, [ONE_MINUS_QT2])),
            ("1;3,2", RatExpr(ONE_MINUS_T, [ONE_MINUS_QT2])),
            ("2;3,1", RatExpr(Poly.monomial(0, 1) * ONE_MINUS_T, [ONE_MINUS_QT2])),
        ],
    )
    def test_weights_of_g12_fillings(self, text, expected):
        assert weight(Filling.from_text(text)) == expected

    def test_content(self):
        assert content(Filling.from_text("1;2,3")) == SubsetMask.from_members(3, [1, 2])
        assert content(Filling.from_text("1;2,2")) == SubsetMask.from_members(3, [1])

    def test_content_needs_packed(self):
        with pytest.raises(PreconditionViolatedError):
            content(Filling.from_text("1;3,3"))

    def test_x_monomial(self):
        assert x_monomial(Filling.from_text("1;2,2"), 3) == (1, 2, 0)
        with pytest.raises(PreconditionViolatedError):
            x_monomial(Filling.from_text("1;2,3"), 2)


class TestEnumeration:
    def test_packed_nat_of_12(self):
        found = [f.to_text() for f in enumerate_packed_nat((1, 2))]
        assert found == ["2;3,1", "1;2,2", "1;3,2", "1;2,3"]

    def test_every_yield_is_nat_and_packed(self):
        for gamma in [(2, 1, 1), (1, 3), (2, 2)]:
            fillings = list(enumerate_packed_nat(gamma))
            assert fillings
            assert len(set(fillings)) == len(fillings)
            for filling in fillings:
                assert is_nat(filling, gamma)
                assert filling.is_packed

    def test_distinct_entries(self):
        diagram = Diagram((1, 2))
        fillings = list(enumerate_fillings(diagram, 3, distinct=True))
        assert all(sorted(f.reading_word) == [1, 2, 3] for f in fillings)

    def test_fixed_bottom_row(self):
        diagram = Diagram((1, 2))
        fillings = list(enumerate_fillings(diagram, 3, bottom_row=(2, 3)))
        assert [f.to_text() for f in fillings] == ["2;3,1", "2;3,3"]

    def test_bottom_row_length_checked(self):
        with pytest.raises(PreconditionViolatedError):
            list(enumerate_fillings(Diagram((1, 2)), 3, bottom_row=(1,)))

    def test_size_guard(self):
        with pytest.raises(SizeLimitExceededError):
            check_size(11, None)
        with pytest.raises(SizeLimitExceededError) as excinfo:
            list(enumerate_packed_nat((1, 2), max_n=2))
        assert excinfo.value.limit == 2
