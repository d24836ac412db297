"""CLI tests through click's CliRunner."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner
from pydantic import ValidationError

from qmac.algebra.qsym import QSymExpr
from qmac.algebra.xpoly import XPoly
from qmac.cli import Request, main
from qmac.core.engine import FORMULAS
from qmac.models import (
    Basis,
    CompareReport,
    FormulaTag,
    OutputFormat,
    QSymExprDoc,
    ReportFormat,
    VerifyReport,
    XPolyDoc,
)

G12_LATEX = r"M_{\{1\}} + \frac{(1-t)(1+t+qt)}{1-qt^2} M_{\{1,2\}}"


@pytest.fixture
def qmac(tmp_path):
    """Invoke the CLI quietly, without picking up a stray .qmac.yml."""
    runner = CliRunner()

    def invoke(*args: str, config: str | None = None):
        config_path = config or str(tmp_path / "none.yml")
        return runner.invoke(main, ["-q", "--config", config_path, *args])

    return invoke


class TestCompute:
    def test_text(self, qmac):
        result = qmac("compute", "--gamma", "1,2")
        assert result.exit_code == 0, result.output
        assert result.output.splitlines()[0] == "M_{1} [1,2]: 1"

    def test_latex(self, qmac):
        result = qmac("compute", "--gamma", "1,2", "--format", "latex")
        assert result.exit_code == 0, result.output
        assert result.output.strip() == G12_LATEX

    def test_single_box(self, qmac):
        result = qmac("compute", "--gamma", "1")
        assert result.output.strip() == "M_{} [1]: 1"

    def test_json_parses_back(self, qmac):
        result = qmac("compute", "-g", "2,1", "-f", "fundamental", "--format", "json")
        assert result.exit_code == 0, result.output
        expr = QSymExpr.from_doc(QSymExprDoc.model_validate_json(result.output))
        assert expr.basis is Basis.FUNDAMENTAL
        assert expr.degree == 3

    def test_basis_conversion(self, qmac):
        direct = qmac("compute", "-g", "1,2")
        converted = qmac("compute", "-g", "1,2", "-f", "fundamental", "-b", "M")
        assert converted.output == direct.output

    def test_format_from_config(self, qmac, config_file):
        result = qmac("compute", "-g", "1,2", config=config_file("output_format: latex\n"))
        assert result.output.strip() == G12_LATEX

    def test_specialization(self, qmac):
        result = qmac("compute", "-g", "1,2", "--spec", "t=1")
        assert result.output.strip() == "M_{1} [1,2]: 1"

    @pytest.mark.parametrize("gamma", ["1,0,2", "a,b", "", "-1"])
    def test_bad_gamma(self, qmac, gamma):
        assert qmac("compute", "--gamma", gamma).exit_code == 2

    @pytest.mark.parametrize("spec", ["x=1", "q", "q=1/0", "t=abc"])
    def test_bad_spec(self, qmac, spec):
        assert qmac("compute", "-g", "1,2", "--spec", spec).exit_code == 2

    def test_pole(self, qmac):
        result = qmac("compute", "-g", "1,2", "--spec", "q=1,t=1")
        assert result.exit_code == 2
        assert "vanishes" in result.output

    def test_size_guard(self, qmac, config_file):
        path = config_file("compute_max_n: 2\n")
        result = qmac("compute", "-g", "1,2", config=path)
        assert result.exit_code == 2
        assert "SizeLimitExceededError" in result.output
        assert qmac("compute", "-g", "1,2", "--unsafe-n", config=path).exit_code == 0

    def test_invalid_config(self, qmac, config_file):
        result = qmac("compute", "-g", "1", config=config_file("threads: 0\n"))
        assert result.exit_code == 2


class TestCompare:
    def test_pass(self, qmac):
        result = qmac("compare", "--gamma", "2,1,1")
        assert result.exit_code == 0, result.output
        assert result.output.startswith("PASS fundamental vs direct for gamma=(2,1,1)")

    def test_hall_littlewood(self, qmac):
        result = qmac("compare", "-g", "1,3", "--lhs", "hl-fundamental", "--rhs", "direct")
        assert result.exit_code == 0, result.output
        assert result.output.strip().endswith("at q=0")

    def test_jack_against_direct(self, qmac):
        result = qmac("compare", "-g", "1,2", "--lhs", "jack-direct")
        assert result.exit_code == 2
        assert "Jack" in result.output

    def test_json(self, qmac):
        result = qmac("compare", "-g", "1,2", "--format", "json")
        report = CompareReport.model_validate_json(result.output)
        assert report.passed
        assert report.terms_compared == 2

    def test_table(self, qmac):
        result = qmac("compare", "-g", "1,2", "--format", "table")
        assert result.exit_code == 0
        assert "PASS fundamental = direct" in result.output

    def test_failure_exits_one(self, qmac, monkeypatch):
        monkeypatch.setitem(
            FORMULAS,
            FormulaTag.DIRECT,
            lambda gamma, max_n=None: QSymExpr.zero(sum(gamma), Basis.MONOMIAL),
        )
        result = qmac("compare", "-g", "1,2")
        assert result.exit_code == 1
        assert "first difference at M_{1} [1,2]" in result.output


class TestExpand:
    def test_matches_definition(self, qmac):
        expanded = qmac("expand", "-g", "1,2", "--vars", "3")
        defined = qmac("expand", "-g", "1,2", "--vars", "3", "--from-definition")
        assert expanded.exit_code == 0, expanded.output
        assert expanded.output == defined.output

    def test_json(self, qmac):
        result = qmac("expand", "-g", "2,1", "-m", "2", "--format", "json")
        poly = XPoly.from_doc(XPolyDoc.model_validate_json(result.output))
        assert poly.nvars == 2

    def test_vars_required(self, qmac):
        assert qmac("expand", "-g", "1,2").exit_code == 2

    def test_vars_positive(self, qmac):
        assert qmac("expand", "-g", "1,2", "-m", "0").exit_code == 2


class TestVerify:
    def test_examples(self, qmac):
        result = qmac("verify", "--only", "examples", "--format", "text")
        assert result.exit_code == 0, result.output
        assert "PASS examples: 5 cases, 0 failures" in result.output

    def test_unknown_check(self, qmac):
        result = qmac("verify", "--only", "nope")
        assert result.exit_code == 2
        assert "Unknown checks" in result.output

    def test_json(self, qmac):
        result = qmac("verify", "--max-n", "2", "--only", "theorem,iota", "--format", "json")
        report = VerifyReport.model_validate_json(result.output)
        assert [c.name for c in report.checks] == ["theorem", "iota"]
        assert report.passed

    def test_table(self, qmac):
        result = qmac("verify", "--max-n", "2", "--only", "theorem")
        assert result.exit_code == 0
        assert "All 3 cases passed." in result.output

    def test_max_n_above_config_rejected(self, qmac):
        result = qmac("verify", "--max-n", "9", "--only", "binomial-lemma", "--format", "text")
        assert result.exit_code == 2
        assert "SizeLimitExceededError" in result.output

    def test_unsafe_n_lifts_the_guard(self, qmac, config_file):
        path = config_file("verify_max_n: 2\n")
        args = ("verify", "--max-n", "3", "--only", "theorem", "--format", "text")
        assert qmac(*args, config=path).exit_code == 2
        result = qmac(*args, "--unsafe-n", config=path)
        assert result.exit_code == 0, result.output
        assert "PASS theorem: 7 cases, 0 failures" in result.output

    def test_worker_count_is_invisible(self, qmac):
        args = ("verify", "--max-n", "3", "--only", "theorem", "--only", "hl-chain")
        single = qmac(*args, "-j", "1", "--format", "json")
        pooled = qmac(*args, "-j", "4", "--format", "json")
        assert single.exit_code == 0, single.output
        assert single.output == pooled.output
        assert json.loads(single.output)["max_n"] == 3


class TestMain:
    def test_version(self):
        result = CliRunner().invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "version" in result.output

    def test_help(self):
        result = CliRunner().invoke(main, ["--help"])
        assert result.exit_code == 0
        for command in ("compute", "compare", "expand", "verify"):
            assert command in result.output


class TestRequest:
    def test_format_is_an_enum(self):
        request = Request(subcommand="compute", gamma=[1, 2], output_format="latex")
        assert request.output_format is OutputFormat.LATEX
        report = Request(subcommand="verify", output_format="table")
        assert report.output_format is ReportFormat.TABLE

    @pytest.mark.parametrize(
        ("subcommand", "output_format"),
        [("compute", "table"), ("expand", "table"), ("compare", "latex"), ("verify", "latex")],
    )
    def test_format_must_suit_the_subcommand(self, subcommand, output_format):
        with pytest.raises(ValidationError, match="cannot write"):
            Request(
                subcommand=subcommand,
                gamma=[1],
                vars=2 if subcommand == "expand" else None,
                rhs=FormulaTag.DIRECT,
                output_format=output_format,
            )

    def test_unknown_format(self):
        with pytest.raises(ValidationError):
            Request(subcommand="compute", gamma=[1], output_format="yaml")
