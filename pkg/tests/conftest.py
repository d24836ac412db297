"""Shared test fixtures for qmac."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence

import pytest

from qmac.algebra.poly import Poly
from qmac.algebra.qsym import QSymExpr
from qmac.algebra.ratexpr import DenFactor, RatExpr
from qmac.combinatorics.shapes import SubsetMask
from qmac.constants import THREADS_ENV_VAR
from qmac.models import Basis, QmacConfig

ONE_MINUS_T = Poly({(0, 0, 0): 1, (0, 1, 0): -1})
ONE_MINUS_QT2 = DenFactor.qt(1, 2)


def make_qsym(
    degree: int,
    basis: Basis,
    terms: Mapping[Iterable[int], RatExpr | int],
) -> QSymExpr:
    """Build a QSymExpr from ``{members: coefficient}``."""
    coeffs = {
        SubsetMask.from_members(degree, members): (
            coeff if isinstance(coeff, RatExpr) else RatExpr(coeff)
        )
        for members, coeff in terms.items()
    }
    return QSymExpr(degree, basis, coeffs)


def permute(alpha: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    """(perm ∘ alpha)_i = alpha_{perm(i)}."""
    return tuple(alpha[p - 1] for p in perm)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def g12_expected() -> QSymExpr:
    """M_{(1,2)} + (1-t)(1+t+qt)/(1-qt^2) M_{(1,1,1)}."""
    numerator = ONE_MINUS_T * Poly({(0, 0, 0): 1, (0, 1, 0): 1, (1, 1, 0): 1})
    return make_qsym(
        3,
        Basis.MONOMIAL,
        {(1,): 1, (1, 2): RatExpr(numerator, [ONE_MINUS_QT2])},
    )


@pytest.fixture(autouse=True)
def _no_thread_override(monkeypatch):
    """Keep a developer's QMAC_THREADS from leaking into config tests."""
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)


@pytest.fixture
def small_config() -> QmacConfig:
    return QmacConfig(verify_max_n=3, lemma_samples=10, truncation_max_vars=3)


@pytest.fixture
def config_file(tmp_path):
    """Write a .qmac.yml and return its path."""

    def write(text: str) -> str:
        path = tmp_path / ".qmac.yml"
        path.write_text(text)
        return str(path)

    return write
