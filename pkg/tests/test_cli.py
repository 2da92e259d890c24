"""Tests for the mixnorm command line."""

from pathlib import Path

import pytest

from mixnorm_lab.cli import main
from mixnorm_lab.grid import DyadicCube, StepFunction
from mixnorm_lab.models import REGIME_CONDITION

SPACE = ["--pbar", "2,4", "--t", "4", "--r", "8"]
CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def chi_file(tmp_path):
    path = tmp_path / "chi.txt"
    chi = StepFunction.indicator(DyadicCube.standard(0, 0), J=0, K=1)
    path.write_text(chi.serialize(), encoding="utf-8")
    return path


def test_no_arguments_prints_usage(capsys):
    """Test that a bare call exits 1 with usage."""
    assert main([]) == 1
    assert "usage" in capsys.readouterr().err


def test_norm_of_cube(capsys):
    """Test the Bourgain-Morrey norm of χ_[0,1)²."""
    assert main(["norm", "--cube", "0:0,0", *SPACE]) == 0
    assert float(capsys.readouterr().out) == pytest.approx((5 / 3) ** 0.125, rel=1e-13)


def test_norm_kinds(capsys):
    """Test the mixed, Morrey and single-level kinds."""
    mixed = ["norm", "--cube=-1:0,0", "--window", "1", "--kind", "mixed"]
    mixed += ["--pbar", "2,4"]
    assert main(mixed) == 0
    assert float(capsys.readouterr().out) == pytest.approx(4 ** (3 / 8))
    morrey = ["norm", "--cube", "0:0,0", "--kind", "morrey"]
    morrey += ["--pbar", "2,4", "--t", "4"]
    assert main(morrey) == 0
    assert float(capsys.readouterr().out) == pytest.approx(1.0)
    assert main(["norm", "--cube", "0:0,0", "--kind", "slice:0", *SPACE]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(1.0)


def test_norm_degenerate_parameters(capsys):
    """Test that t below the critical exponent is a validation error."""
    args = ["norm", "--cube", "0:0,0", "--pbar", "2,4", "--t", "2", "--r", "8"]

    assert main(args) == 1
    assert REGIME_CONDITION in capsys.readouterr().err


def test_norm_needs_input(capsys):
    """Test that norm without --input or --cube fails."""
    assert main(["norm", *SPACE]) == 1
    assert "input is required" in capsys.readouterr().err


def test_norm_unknown_kind(capsys):
    """Test that unknown kinds are rejected."""
    assert main(["norm", "--cube", "0:0,0", "--kind", "sobolev", *SPACE]) == 1


def test_apply_doob(chi_file, tmp_path):
    """Test applying Doob's maximal function through files."""
    output = tmp_path / "out.txt"
    args = ["apply", "--input", str(chi_file), "--op", "doob", "--output", str(output)]

    assert main(args) == 0
    result = StepFunction.parse(output.read_text(encoding="utf-8"))
    assert result.values.tolist() == [1.0, 0.5]


def test_apply_writes_stdout(chi_file, capsys):
    """Test that apply defaults to stdout."""
    assert main(["apply", "--input", str(chi_file), "--op", "ek:-1"]) == 0
    result = StepFunction.parse(capsys.readouterr().out)
    assert result.values.tolist() == [0.5, 0.5]


def test_apply_unknown_operator(chi_file, capsys):
    """Test that unknown operators list the choices."""
    assert main(["apply", "--input", str(chi_file), "--op", "laplace"]) == 1
    assert "doob" in capsys.readouterr().err


def test_apply_missing_file(tmp_path):
    """Test that unreadable inputs exit 1."""
    missing = tmp_path / "missing.txt"

    assert main(["apply", "--input", str(missing), "--op", "doob"]) == 1


def test_pair(chi_file, capsys):
    """Test ∫χ·χ = 1."""
    assert main(["pair", "--input", str(chi_file), "--other", str(chi_file)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(1.0)


def test_block_bracket(tmp_path, capsys):
    """Test the bracket of χ_[0,1)² and its decomposition file."""
    g = tmp_path / "g.txt"
    g.write_text(StepFunction.indicator(DyadicCube.standard(0, 0, 0)).serialize())
    decomposition = tmp_path / "dec.txt"
    args = [
        "block-bracket",
        "--input",
        str(g),
        *SPACE,
        "--budget",
        "2",
        "--decomposition",
        str(decomposition),
    ]

    assert main(args) == 0
    fields = dict(item.split("=") for item in capsys.readouterr().out.split())
    assert set(fields) == {"lower", "upper", "ratio"}
    lower, upper = float(fields["lower"]), float(fields["upper"])
    assert 0 < lower <= upper * (1 + 1e-12)
    assert upper == pytest.approx(1.0)
    assert float(fields["ratio"]) == pytest.approx(upper / lower)
    assert decomposition.read_text().startswith("0 0,0 0,0 ")


def test_block_bracket_zero_function(tmp_path, capsys):
    """Test that the zero function gets the 0/0 = 0 ratio."""
    g = tmp_path / "zero.txt"
    g.write_text(StepFunction.zeros(2, J=0, K=1).serialize())

    assert main(["block-bracket", "--input", str(g), *SPACE, "--budget", "2"]) == 0
    assert capsys.readouterr().out.split() == ["lower=0", "upper=0", "ratio=0"]


def test_block_bracket_vector_needs_u_dual(chi_file):
    """Test that several inputs need --u-dual."""
    inputs = [str(chi_file), str(chi_file)]
    args = ["block-bracket", "--input", *inputs, "--pbar", "2", "--t", "3", "--r", "6"]

    assert main(args) == 1


def test_probe_passes(capsys):
    """Test one exact probe from the command line."""
    assert main(["probe", "conditional_expectation", "--trials", "3"]) == 0
    assert capsys.readouterr().out.startswith("✓ conditional_expectation")


def test_probe_csv(tmp_path, capsys):
    """Test CSV emission and the report file."""
    output = tmp_path / "probe.csv"
    args = ["probe", "dyadic_dilation", "--trials", "2", "--emit", "csv"]

    assert main([*args, "--output", str(output)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("probe,params,trials")
    assert output.read_text(encoding="utf-8") == out


def test_probe_errors(capsys):
    """Test unknown probes and malformed overrides."""
    assert main(["probe", "nonexistent"]) == 1
    assert main(["probe", "holder", "--set", "qbar"]) == 1


def test_suite(tmp_path, capsys):
    """Test a suite run with the output path override."""
    config = tmp_path / "suite.cfg"
    config.write_text("probes=dyadic_dilation\ntrials=2\n", encoding="utf-8")
    output = tmp_path / "suite.csv"

    assert main(["suite", "--config", str(config), "--output", str(output)]) == 0
    assert output.exists()


def test_suite_shipped_empirical_config(tmp_path, capsys):
    """Test that every empirical constant is stable under one refinement."""
    output = tmp_path / "empirical.csv"
    config = str(CONFIG_DIR / "empirical.cfg")

    assert main(["suite", "--config", config, "--output", str(output)]) == 0
    out = capsys.readouterr().out
    assert "✓ riesz" in out
    assert "✓ block_hilbert" in out
    assert "✗" not in out
    assert output.exists()


def test_suite_missing_config(tmp_path):
    """Test that a missing config file exits 1."""
    assert main(["suite", "--config", str(tmp_path / "none.cfg")]) == 1
