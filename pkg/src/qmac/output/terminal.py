"""Rich-based terminal display for verify and compare reports."""

from __future__ import annotations

from typing import TYPE_CHECKING

from rich.console import Console
from rich.table import Table

if TYPE_CHECKING:
    from qmac.models import CompareReport, VerifyReport

console = Console()


def display_verify_report(report: VerifyReport, out: Console | None = None) -> None:
    """Summary table of a verify run, then the failures of each failing check."""
    out = out or console
    table = Table(title=f"qmac verify (n <= {report.max_n})")
    table.add_column("Check", style="bold")
    table.add_column("Description")
    table.add_column("Cases", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Status")

    for check in report.checks:
        status = "[green]PASS[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(
            check.name, check.description, str(check.cases), str(len(check.failures)), status
        )
    out.print(table)

    for check in report.checks:
        if check.passed:
            continue
        out.print(f"\n[bold red]{check.name}[/bold red]")
        for failure in check.failures:
            out.print(f"  {failure}", markup=False)

    if report.passed:
        out.print(f"\n[green]All {report.total_cases} cases passed.[/green]")
    else:
        failed = sum(1 for c in report.checks if not c.passed)
        out.print(f"\n[red]{failed} of {len(report.checks)} checks failed.[/red]")


def display_compare_report(report: CompareReport, out: Console | None = None) -> None:
    """PASS/FAIL line, plus a two-row table of the first differing coefficient."""
    out = out or console
    gamma = ",".join(str(p) for p in report.gamma)
    if report.passed:
        out.print(
            f"[green]PASS[/green] {report.lhs.value} = {report.rhs.value} "
            f"for gamma=({gamma}) ({report.terms_compared} terms)"
        )
        return
    out.print(f"[red]FAIL[/red] {report.lhs.value} != {report.rhs.value} for gamma=({gamma})")
    diff = report.first_difference
    if diff is None:
        return
    members = ",".join(str(i) for i in diff.subset)
    table = Table(title=f"First difference at M_{{{members}}}")
    table.add_column("Formula", style="bold")
    table.add_column("Coefficient")
    table.add_row(report.lhs.value, diff.lhs)
    table.add_row(report.rhs.value, diff.rhs)
    out.print(table)
