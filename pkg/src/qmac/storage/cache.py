"""On-disk cache of computed expansions.

An expansion depends only on (formula, gamma) and on the code that produced
it, so every entry is filed under the package version as well. Entries are
QSymExprDoc JSON; one that no longer parses back into the formula's native
basis and degree is deleted on read and recomputed by the caller.
"""

from __future__ import annotations

import hashlib
import logging
import os
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from qmac import __version__
from qmac.algebra.qsym import QSymExpr
from qmac.models import FormulaTag, QSymExprDoc

logger = logging.getLogger(__name__)


def _gamma_label(gamma: Sequence[int]) -> str:
    return ",".join(map(str, gamma))


class ExpansionCache:
    """One JSON file per (version, formula, gamma) in a cache directory."""

    def __init__(self, cache_dir: str | Path = ".qmac-cache", *, version: str = __version__):
        self._cache_dir = Path(cache_dir)
        if self._cache_dir.is_symlink():
            raise ValueError(f"Cache directory is a symlink: {self._cache_dir}")
        self._cache_dir.mkdir(parents=True, exist_ok=True)
        self._version = version

    @property
    def directory(self) -> Path:
        return self._cache_dir

    def path_for(self, formula: FormulaTag, gamma: Sequence[int]) -> Path:
        """File holding the expansion of G_gamma by ``formula``.

        The name starts with the formula so a directory listing stays
        readable; the digest covers the version and gamma.
        """
        formula = FormulaTag(formula)
        key = f"{self._version}:{formula.value}:{_gamma_label(gamma)}"
        digest = hashlib.sha256(key.encode()).hexdigest()[:16]
        return self._cache_dir / f"{formula.value}-{digest}.json"

    def load(self, formula: FormulaTag, gamma: Sequence[int]) -> QSymExpr | None:
        """The cached expansion, or None on a miss or a discarded entry."""
        formula = FormulaTag(formula)
        path = self.path_for(formula, gamma)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        except OSError:
            logger.warning("Ignoring unreadable cache entry %s", path.name)
            return None

        try:
            expr = QSymExpr.from_doc(QSymExprDoc.model_validate_json(text))
        except (ValidationError, ValueError):
            expr = None
        if expr is None or expr.basis is not formula.native_basis or expr.degree != sum(gamma):
            logger.warning(
                "Discarding malformed cache entry for %s gamma=(%s)",
                formula.value,
                _gamma_label(gamma),
            )
            path.unlink(missing_ok=True)
            return None
        return expr

    def store(self, formula: FormulaTag, gamma: Sequence[int], expr: QSymExpr) -> None:
        """Write an expansion atomically. A failed write is logged, never raised."""
        path = self.path_for(formula, gamma)
        tmp_path = path.with_suffix(".tmp")
        try:
            tmp_path.write_text(expr.to_doc().model_dump_json())
            os.replace(tmp_path, path)
        except OSError:
            tmp_path.unlink(missing_ok=True)
            logger.warning("Could not write cache entry %s", path.name, exc_info=True)
