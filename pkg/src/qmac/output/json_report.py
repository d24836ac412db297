"""Machine-readable JSON output.

Expansions and truncations serialize through their document models
(QSymExprDoc, XPolyDoc); reports are already documents. Every output parses
back through the matching model in ``qmac.models``.
"""

from __future__ import annotations

from qmac.algebra.qsym import QSymExpr
from qmac.algebra.xpoly import XPoly
from qmac.models import CompareReport, VerifyReport

JsonValue = QSymExpr | XPoly | CompareReport | VerifyReport


def format_json(value: JsonValue, *, pretty: bool = True) -> str:
    """Serialize an expansion, truncation or report.

    Terms come out in the canonical order of the value itself, so equal
    values always print the same bytes.
    """
    document = value.to_doc() if isinstance(value, QSymExpr | XPoly) else value
    return document.model_dump_json(indent=2 if pretty else None)
