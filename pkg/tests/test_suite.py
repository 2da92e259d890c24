"""Tests for suite configuration files and the suite runner."""

from pathlib import Path

import pytest

from mixnorm_lab.verify import (
    EMPIRICAL_PROBES,
    EXACT_PROBES,
    load_suite_config,
    parse_suite_config,
    reports_to_csv,
    run_suite,
    suite_exit_status,
)

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

SMALL_SUITE = """
# two quick exact probes
probes=conditional_expectation,dyadic_dilation
seed=42
trials=3
"""


def test_parse_empty_config():
    """Test that an empty file enables no probes."""
    config = parse_suite_config("")

    assert config.probes == ()
    assert config.seed == 20240601
    assert config.trials is None
    assert config.output is None


def test_empty_suite_exits_zero():
    """Test that a suite without probes succeeds."""
    reports = run_suite(parse_suite_config("# nothing\n"))

    assert reports == []
    assert suite_exit_status(reports) == 0


def test_parse_expands_groups_without_duplicates():
    """Test that named probes keep their place ahead of group members."""
    config = parse_suite_config("probes=holder, exact\n")

    assert config.probes[0] == "holder"
    assert config.probes.count("holder") == 1
    assert set(config.probes) == set(EXACT_PROBES)


def test_parse_overrides():
    """Test that probe.key lines become per-probe overrides."""
    config = parse_suite_config("probes=young\nyoung.trials=20\nyoung.r=inf # Morrey\n")

    assert config.overrides == {"young": {"trials": "20", "r": "inf"}}


@pytest.mark.parametrize(
    "text, message",
    [
        ("probes=exact\nseed\n", "line 2"),
        ("colour=blue\n", "unknown key"),
        ("nonexistent.trials=3\n", "unknown probe"),
        ("probes=nonexistent\n", "unknown probe"),
        ("seed=abc\n", "seed must be an integer"),
        ("holder.=3\n", "empty option"),
    ],
)
def test_parse_errors(text, message):
    """Test that malformed configurations raise ValueError."""
    with pytest.raises(ValueError, match=message):
        parse_suite_config(text)


def test_shipped_configs_parse():
    """Test the default and empirical suite files."""
    default = load_suite_config(str(CONFIG_DIR / "default.cfg"))
    empirical = load_suite_config(str(CONFIG_DIR / "empirical.cfg"))

    assert default.probes == EXACT_PROBES
    assert default.trials == 1000
    assert default.overrides["embedding"] == {"r2": "16"}
    assert empirical.probes == EMPIRICAL_PROBES


def test_run_suite_writes_csv(tmp_path):
    """Test that the suite writes one CSV row per probe in config order."""
    output = tmp_path / "reports" / "suite.csv"
    config = parse_suite_config(SMALL_SUITE + f"output={output}\n")
    reports = run_suite(config)
    lines = output.read_text(encoding="utf-8").splitlines()

    assert [r.name for r in reports] == ["conditional_expectation", "dyadic_dilation"]
    assert lines[0] == "probe,params,trials,max_ratio,witness_seed,pass,notes"
    assert [line.split(",")[0] for line in lines[1:]] == [r.name for r in reports]
    assert suite_exit_status(reports) == 0


def test_run_suite_is_deterministic():
    """Test that identical configs give byte-identical CSV, whatever the threads."""
    config = parse_suite_config(SMALL_SUITE)

    first = reports_to_csv(run_suite(config))
    second = reports_to_csv(run_suite(config, threads=4))

    assert first == second


def test_invalid_override_fails_before_running():
    """Test that a bad probe setting is rejected while building the suite."""
    config = parse_suite_config("probes=holder\nholder.J=x\n")

    with pytest.raises(ValueError):
        run_suite(config)
