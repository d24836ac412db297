"""qmac CLI: quasisymmetric Macdonald expansions from your terminal."""

from __future__ import annotations

import contextlib
import logging
from fractions import Fraction
from typing import Any, Literal

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from rich.console import Console
from rich.logging import RichHandler

from qmac.combinatorics.shapes import as_strong, parse_composition
from qmac.constants import DEFAULT_CONFIG_FILE, VARIABLES
from qmac.errors import CompositionError, QmacError
from qmac.models import Basis, FormulaTag, OutputFormat, QmacConfig, ReportFormat

logger = logging.getLogger(__name__)
console = Console(stderr=True)
_quiet = False

# Exit statuses
EXIT_OK = 0
EXIT_FAIL = 1

_FORMULAS = [tag.value for tag in FormulaTag]

_FORMATS: dict[str, frozenset[str]] = {
    "compute": frozenset(OutputFormat),
    "expand": frozenset(OutputFormat),
    "compare": frozenset(ReportFormat),
    "verify": frozenset(ReportFormat),
}


def _spinner(msg: str) -> contextlib.AbstractContextManager[Any]:
    """Return a Rich status spinner, or a no-op context manager when --quiet."""
    if _quiet:
        return contextlib.nullcontext()
    ctx: contextlib.AbstractContextManager[Any] = console.status(msg, spinner="dots")
    return ctx


def _stdout() -> Console:
    return Console(file=click.get_text_stream("stdout"), width=120)


# ──────────────────────────────────────────────
# Requests
# ──────────────────────────────────────────────


class Request(BaseModel):
    """One parsed CLI invocation."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    subcommand: Literal["compute", "compare", "expand", "verify"]
    gamma: list[int] = Field(default_factory=list)
    formula: FormulaTag = FormulaTag.DIRECT
    rhs: FormulaTag | None = None  # compare only; ``formula`` is the left side
    basis: Basis | None = None
    spec: dict[str, Fraction] = Field(default_factory=dict)
    vars: int | None = None
    from_definition: bool = False
    output_format: OutputFormat | ReportFormat = OutputFormat.TEXT
    max_n: int | None = None
    threads: int = 1
    only: list[str] = Field(default_factory=list)
    unsafe_n: bool = False

    @model_validator(mode="after")
    def _consistent(self) -> Request:
        if self.vars is not None and self.subcommand != "expand":
            raise ValueError("vars is only meaningful for expand")
        if self.subcommand == "expand" and (self.vars is None or self.vars < 1):
            raise ValueError("expand needs a positive number of variables")
        if self.subcommand != "verify":
            if not self.gamma:
                raise ValueError(f"{self.subcommand} needs a composition gamma")
            as_strong(self.gamma)
        if self.subcommand == "compare" and self.rhs is None:
            raise ValueError("compare needs a right-hand formula")
        if self.output_format not in _FORMATS[self.subcommand]:
            raise ValueError(f"{self.subcommand} cannot write {self.output_format} output")
        unknown = sorted(set(self.spec) - set(VARIABLES))
        if unknown:
            raise ValueError(f"cannot specialize unknown variables: {', '.join(unknown)}")
        return self


def run(request: Request, config: QmacConfig) -> int:
    """Execute a request, writing its output to stdout.

    Returns the exit status: 0 on success, 1 when a comparison or
    verification fails. Library errors propagate to the caller.
    """
    from qmac.core.engine import MacdonaldEngine

    engine = MacdonaldEngine(config)
    fmt = request.output_format

    if request.subcommand == "compute":
        with _spinner(f"Computing {request.formula.value} expansion..."):
            expr = engine.compute(
                request.gamma,
                request.formula,
                basis=request.basis,
                specialization=request.spec,
                unsafe_n=request.unsafe_n,
            )
        if fmt == OutputFormat.JSON:
            from qmac.output.json_report import format_json

            click.echo(format_json(expr))
        elif fmt == OutputFormat.LATEX:
            from qmac.output.latex import latex_qsym

            click.echo(latex_qsym(expr))
        else:
            from qmac.output.text import format_qsym_text

            click.echo(format_qsym_text(expr))
        return EXIT_OK

    if request.subcommand == "expand":
        assert request.vars is not None
        with _spinner(f"Expanding in {request.vars} variables..."):
            poly = engine.expand(
                request.gamma,
                request.formula,
                request.vars,
                specialization=request.spec,
                from_definition=request.from_definition,
                unsafe_n=request.unsafe_n,
            )
        if fmt == OutputFormat.JSON:
            from qmac.output.json_report import format_json

            click.echo(format_json(poly))
        elif fmt == OutputFormat.LATEX:
            from qmac.output.latex import latex_xpoly

            click.echo(latex_xpoly(poly))
        else:
            from qmac.output.text import format_xpoly_text

            click.echo(format_xpoly_text(poly))
        return EXIT_OK

    if request.subcommand == "compare":
        assert request.rhs is not None
        with _spinner(f"Comparing {request.formula.value} with {request.rhs.value}..."):
            report = engine.compare(
                request.gamma,
                request.formula,
                request.rhs,
                specialization=request.spec,
                unsafe_n=request.unsafe_n,
            )
        if fmt == ReportFormat.JSON:
            from qmac.output.json_report import format_json

            click.echo(format_json(report))
        elif fmt == ReportFormat.TABLE:
            from qmac.output.terminal import display_compare_report

            display_compare_report(report, _stdout())
        else:
            from qmac.output.text import format_compare_text

            click.echo(format_compare_text(report))
        return EXIT_OK if report.passed else EXIT_FAIL

    from qmac.core.verify import run_verify

    with _spinner("Running invariant checks..."):
        verify_report = run_verify(
            config,
            max_n=request.max_n,
            threads=request.threads,
            only=request.only or None,
            unsafe_n=request.unsafe_n,
        )
    if fmt == ReportFormat.JSON:
        from qmac.output.json_report import format_json

        click.echo(format_json(verify_report))
    elif fmt == ReportFormat.TEXT:
        from qmac.output.text import format_verify_text

        click.echo(format_verify_text(verify_report))
    else:
        from qmac.output.terminal import display_verify_report

        display_verify_report(verify_report, _stdout())
    return EXIT_OK if verify_report.passed else EXIT_FAIL


def _execute(ctx: click.Context, **fields: Any) -> None:
    """Validate a request, run it, and map library errors to exit status 2."""
    config: QmacConfig = ctx.obj["config"]
    try:
        request = Request(**fields)
    except ValidationError as exc:
        messages = "; ".join(str(err["msg"]) for err in exc.errors())
        raise click.UsageError(messages) from None
    try:
        status = run(request, config)
    except QmacError as exc:
        raise click.UsageError(f"{type(exc).__name__}: {exc}") from None
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if status:
        raise SystemExit(status)


# ──────────────────────────────────────────────
# Option callbacks
# ──────────────────────────────────────────────


def _validate_gamma(ctx: click.Context, param: click.Parameter, value: str | None) -> list[int]:
    if value is None:
        return []
    try:
        return list(as_strong(parse_composition(value)))
    except CompositionError as exc:
        raise click.BadParameter(str(exc)) from None


def _validate_spec(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> dict[str, Fraction]:
    """Parse ``"q=0,t=1/2"`` into an assignment of rationals."""
    if not value:
        return {}
    assignment: dict[str, Fraction] = {}
    for item in value.split(","):
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep or name not in VARIABLES:
            raise click.BadParameter(f"Expected var=value with var in {{q,t,a}}, got {item!r}")
        try:
            assignment[name] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise click.BadParameter(f"{raw.strip()!r} is not a rational number") from None
    return assignment


def _split_only(ctx: click.Context, param: click.Parameter, value: tuple[str, ...]) -> list[str]:
    return [name.strip() for item in value for name in item.split(",") if name.strip()]


_spec_option = click.option(
    "--spec",
    "-s",
    callback=_validate_spec,
    help="Specialize variables, e.g. 'q=0,t=1/2'.",
)
_gamma_option = click.option(
    "--gamma",
    "-g",
    required=True,
    callback=_validate_gamma,
    help="Strong composition, e.g. '1,4,3'.",
)
_unsafe_option = click.option(
    "--unsafe-n",
    is_flag=True,
    default=False,
    help="Lift the |gamma| size guard from the configuration.",
)


# ──────────────────────────────────────────────
# Commands
# ──────────────────────────────────────────────


@click.group()
@click.version_option(package_name="py-qmac")
@click.option("--verbose", "-v", is_flag=True, default=False, help="Enable debug logging.")
@click.option("--quiet", "-q", is_flag=True, default=False, help="Suppress Rich spinners.")
@click.option("--config", "-c", default=DEFAULT_CONFIG_FILE, help="Config file path.")
@click.pass_context
def main(ctx: click.Context, verbose: bool, quiet: bool, config: str) -> None:
    """qmac: exact quasisymmetric Macdonald polynomials, five ways."""
    global _quiet
    if quiet:
        _quiet = True
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True, show_path=False)],
    )

    from qmac.config import load_config

    try:
        cfg = load_config(config)
    except ValidationError as exc:
        raise click.UsageError(f"Invalid config {config}: {exc}") from None
    ctx.ensure_object(dict)
    ctx.obj["config"] = cfg


@main.command()
@_gamma_option
@click.option(
    "--formula",
    "-f",
    type=click.Choice(_FORMULAS),
    default=FormulaTag.DIRECT.value,
    help="Combinatorial formula to expand by.",
)
@click.option(
    "--basis",
    "-b",
    type=click.Choice([b.value for b in Basis]),
    default=None,
    help="Convert to this basis (default: the formula's own).",
)
@_spec_option
@click.option(
    "--format",
    "output_format",
    type=click.Choice([f.value for f in OutputFormat]),
    default=None,
    help="Output format (default from config).",
)
@_unsafe_option
@click.pass_context
def compute(
    ctx: click.Context,
    gamma: list[int],
    formula: str,
    basis: str | None,
    spec: dict[str, Fraction],
    output_format: str | None,
    unsafe_n: bool,
) -> None:
    """Expand G_gamma in the monomial or fundamental basis."""
    _execute(
        ctx,
        subcommand="compute",
        gamma=gamma,
        formula=FormulaTag(formula),
        basis=Basis(basis) if basis else None,
        spec=spec,
        output_format=output_format or ctx.obj["config"].output_format.value,
        unsafe_n=unsafe_n,
    )


@main.command()
@_gamma_option
@click.option("--lhs", type=click.Choice(_FORMULAS), default=FormulaTag.FUNDAMENTAL.value)
@click.option("--rhs", type=click.Choice(_FORMULAS), default=FormulaTag.DIRECT.value)
@_spec_option
@click.option(
    "--format",
    "output_format",
    type=click.Choice([f.value for f in ReportFormat]),
    default=ReportFormat.TEXT.value,
)
@_unsafe_option
@click.pass_context
def compare(
    ctx: click.Context,
    gamma: list[int],
    lhs: str,
    rhs: str,
    spec: dict[str, Fraction],
    output_format: str,
    unsafe_n: bool,
) -> None:
    """Check that two formulas give the same G_gamma (exit 1 if not)."""
    _execute(
        ctx,
        subcommand="compare",
        gamma=gamma,
        formula=FormulaTag(lhs),
        rhs=FormulaTag(rhs),
        spec=spec,
        output_format=output_format,
        unsafe_n=unsafe_n,
    )


@main.command()
@_gamma_option
@click.option("--vars", "-m", "num_vars", type=click.IntRange(min=1), required=True)
@click.option(
    "--formula",
    "-f",
    type=click.Choice(_FORMULAS),
    default=FormulaTag.DIRECT.value,
    help="Expansion to evaluate in m variables.",
)
@click.option(
    "--from-definition",
    is_flag=True,
    default=False,
    help="Sum the defining expansion over weak compositions instead.",
)
@_spec_option
@click.option(
    "--format",
    "output_format",
    type=click.Choice([f.value for f in OutputFormat]),
    default=None,
    help="Output format (default from config).",
)
@_unsafe_option
@click.pass_context
def expand(
    ctx: click.Context,
    gamma: list[int],
    num_vars: int,
    formula: str,
    from_definition: bool,
    spec: dict[str, Fraction],
    output_format: str | None,
    unsafe_n: bool,
) -> None:
    """Write G_gamma as a polynomial in x_1..x_m."""
    _execute(
        ctx,
        subcommand="expand",
        gamma=gamma,
        vars=num_vars,
        formula=FormulaTag(formula),
        from_definition=from_definition,
        spec=spec,
        output_format=output_format or ctx.obj["config"].output_format.value,
        unsafe_n=unsafe_n,
    )


@main.command()
@click.option(
    "--max-n",
    type=click.IntRange(min=1),
    default=None,
    help="Largest |gamma| checked (default and cap: verify_max_n).",
)
@click.option(
    "--threads",
    "-j",
    type=click.IntRange(min=1),
    default=None,
    help="Worker processes (overrides config and QMAC_THREADS).",
)
@click.option(
    "--only",
    multiple=True,
    callback=_split_only,
    help="Run only these checks (repeatable or comma-separated).",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice([f.value for f in ReportFormat]),
    default=ReportFormat.TABLE.value,
)
@_unsafe_option
@click.pass_context
def verify(
    ctx: click.Context,
    max_n: int | None,
    threads: int | None,
    only: list[str],
    output_format: str,
    unsafe_n: bool,
) -> None:
    """Run the invariant suite up to --max-n (exit 1 on any failure)."""
    from qmac.config import resolve_threads

    config: QmacConfig = ctx.obj["config"]
    if threads is not None:
        config.threads = threads
    _execute(
        ctx,
        subcommand="verify",
        max_n=max_n,
        threads=resolve_threads(config),
        only=only,
        output_format=output_format,
        unsafe_n=unsafe_n,
    )
