"""Plain-text rendering of expansions and comparison reports.

One term per line, in canonical order, so output is byte-stable.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from qmac.algebra.xpoly import monomial_text
from qmac.combinatorics.shapes import subset_comp

if TYPE_CHECKING:
    from qmac.algebra.qsym import QSymExpr
    from qmac.algebra.xpoly import XPoly
    from qmac.combinatorics.shapes import SubsetMask
    from qmac.models import CompareReport, VerifyReport


def basis_label(prefix: str, subset: SubsetMask) -> str:
    """``M_{1,2} [1,1,1]``: subset subscript followed by its composition."""
    members = ",".join(str(i) for i in subset.members)
    parts = ",".join(str(p) for p in subset_comp(subset)) if subset.n else ""
    return f"{prefix}_{{{members}}} [{parts}]"


def format_qsym_text(expr: QSymExpr) -> str:
    if expr.is_zero:
        return "0"
    return "\n".join(
        f"{basis_label(expr.basis.value, subset)}: {coeff}" for subset, coeff in expr
    )


def format_xpoly_text(poly: XPoly) -> str:
    if poly.is_zero:
        return "0"
    return "\n".join(f"{monomial_text(exps)}: {coeff}" for exps, coeff in poly)


def format_compare_text(report: CompareReport) -> str:
    gamma = ",".join(str(p) for p in report.gamma)
    status = "PASS" if report.passed else "FAIL"
    line = (
        f"{status} {report.lhs.value} vs {report.rhs.value} for gamma=({gamma}): "
        f"{report.terms_compared} terms compared"
    )
    if report.specialization:
        spec = ",".join(f"{k}={v}" for k, v in report.specialization.items())
        line += f" at {spec}"
    diff = report.first_difference
    if diff is None:
        return line
    members = ",".join(str(i) for i in diff.subset)
    parts = ",".join(str(p) for p in diff.composition)
    return (
        f"{line}\n"
        f"first difference at M_{{{members}}} [{parts}]\n"
        f"  {report.lhs.value}: {diff.lhs}\n"
        f"  {report.rhs.value}: {diff.rhs}"
    )


def format_verify_text(report: VerifyReport) -> str:
    """Summary lines followed by every failure message."""
    lines = []
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"{status} {check.name}: {check.cases} cases, {len(check.failures)} failures")
        lines.extend(f"  {failure}" for failure in check.failures)
    overall = "PASS" if report.passed else "FAIL"
    lines.append(f"{overall}: {report.total_cases} cases up to n={report.max_n}")
    return "\n".join(lines)
