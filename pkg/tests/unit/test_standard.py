"""Tests for standard fillings, destandardization, and the ST0 -> ST1 bijection."""

from __future__ import annotations

import pytest

from qmac.combinatorics.fillings import Filling, StandardFilling, coinv, maj
from qmac.combinatorics.shapes import Cell, SubsetMask
from qmac.combinatorics.standard import (
    coinv_des,
    column_sort,
    des_values,
    descent_group,
    destandardize,
    enumerate_st,
    enumerate_st0,
    enumerate_st1,
    inverse_descents,
    iota,
    is_st0,
    is_st1,
    nu_set,
    omega,
    standardize,
    v_set,
    w_set,
)
from qmac.errors import PreconditionViolatedError

TAU = StandardFilling.from_text("2;7,8,5;4,6,1,3")
ST0_TAU = StandardFilling.from_text("6;8,2,1;7,5,4,3")


def subset(n: int, *members: int) -> SubsetMask:
    return SubsetMask.from_members(n, members)


class TestStandardize:
    def test_worked_example(self):
        assert standardize(Filling.from_text("1;4,5,3;2,3,1,2")) == TAU

    def test_top_tie_gets_smaller_label(self):
        assert standardize(Filling.from_text("1;2,2")) == StandardFilling.from_text("1;3,2")

    def test_standard_filling_is_fixed(self):
        assert standardize(TAU) == TAU

    def test_statistics_preserved(self):
        filling = Filling.from_text("1;4,5,3;2,3,1,2")
        tau = standardize(filling)
        assert maj(tau) == maj(filling)
        assert coinv(tau) == coinv(filling)


class TestDescentSets:
    def test_reading_word(self):
        assert TAU.reading_word == (3, 5, 1, 8, 6, 2, 7, 4)

    def test_inverse_descents(self):
        assert inverse_descents(TAU).members == (2, 4, 7)

    def test_v_set(self):
        assert v_set(TAU).members == (2, 4, 6, 7)

    def test_st0_example(self):
        assert ST0_TAU.reading_word == (3, 1, 4, 2, 5, 6, 8, 7)
        assert inverse_descents(ST0_TAU).members == (2, 7)
        assert nu_set(ST0_TAU).members == (2, 5, 6, 7)

    def test_w_set(self):
        assert w_set(ST0_TAU).members == (1, 3, 4)
        assert w_set(StandardFilling.from_text("1;3,2")).members == (2,)


class TestDestandardize:
    @pytest.mark.parametrize(
        ("members", "expected"),
        [
            ((1, 2, 3, 4, 5, 6, 7), "2;7,8,5;4,6,1,3"),
            ((1, 2, 4, 5, 6, 7), "2;6,7,4;3,5,1,3"),
            ((2, 4, 6, 7), "1;4,5,3;2,3,1,2"),
        ],
    )
    def test_displays(self, members, expected):
        assert destandardize(TAU, subset(8, *members)) == Filling.from_text(expected)

    def test_full_subset_is_identity_on_entries(self):
        assert destandardize(TAU, SubsetMask.full(8)).columns == TAU.columns

    def test_subset_must_contain_v(self):
        with pytest.raises(PreconditionViolatedError, match="does not contain"):
            destandardize(TAU, subset(8, 2, 4, 6))

    def test_degree_mismatch(self):
        with pytest.raises(PreconditionViolatedError):
            destandardize(TAU, SubsetMask.full(7))

    def test_standardize_inverts(self):
        for members in [(2, 4, 6, 7), (1, 2, 4, 6, 7), (2, 3, 4, 5, 6, 7)]:
            assert standardize(destandardize(TAU, subset(8, *members))) == TAU


class TestEnumeration:
    def test_st_of_12(self):
        found = [tau.to_text() for tau in enumerate_st((1, 2))]
        assert sorted(found) == ["1;2,3", "1;3,2", "2;3,1"]

    def test_st0_and_st1(self):
        assert sorted(t.to_text() for t in enumerate_st0((1, 2))) == ["1;3,2", "2;3,1"]
        assert len(list(enumerate_st1((1, 2)))) == 3

    def test_predicates(self):
        assert is_st0(ST0_TAU)
        assert not is_st0(StandardFilling.from_text("1;2,3"))
        assert is_st1(StandardFilling.from_text("1;2,3"))
        assert not is_st1(StandardFilling.from_text("2;1,3"))


class TestIota:
    def test_worked_example(self):
        image = iota(ST0_TAU, subset(8, 3, 4))
        assert image == StandardFilling.from_text("6;8,2,1;7,3,4,5")
        assert inverse_descents(image).members == (3, 4, 7)
        assert des_values(image) == {4, 5}
        assert coinv_des(image) == 2
        assert omega(image) == 2
        assert nu_set(image).members == (2, 3, 4, 5, 6, 7)
        # iota moves 3 and 4 into inverse descents and drops 2
        assert inverse_descents(ST0_TAU).members == (2, 7)
        assert nu_set(image) == nu_set(ST0_TAU) | subset(8, 3, 4)

    def test_empty_subset_is_identity(self):
        assert iota(ST0_TAU, SubsetMask(8)) == ST0_TAU

    def test_lands_in_st1(self):
        for u in w_set(ST0_TAU).subsets():
            image = iota(ST0_TAU, u)
            assert is_st1(image)
            assert len(des_values(image)) == len(u)
            assert column_sort(image) == ST0_TAU

    def test_needs_st0(self):
        with pytest.raises(PreconditionViolatedError, match="ST0"):
            iota(StandardFilling.from_text("1;2,3"), SubsetMask(3))

    def test_subset_within_w(self):
        with pytest.raises(PreconditionViolatedError):
            iota(ST0_TAU, subset(8, 2))

    def test_descent_group(self):
        image = iota(ST0_TAU, subset(8, 3, 4))
        assert descent_group(image, 4) == {Cell(2, 3), Cell(3, 3), Cell(4, 3)}
        assert descent_group(image, 7) == {Cell(1, 3)}

    def test_omega_of_st0(self):
        assert omega(ST0_TAU) == 2
        assert coinv_des(ST0_TAU) == 0
