"""
Suite configuration files and the suite runner.

A suite file is UTF-8 text with one ``key=value`` per line, ``#`` comments
and blank lines ignored::

    probes=exact
    seed=20240601
    trials=1000
    young.trials=20
    embedding.r2=inf
"""

from __future__ import annotations

import dagster as dg

from mixnorm_lab.models import ProbeReport, SuiteConfig

from .base import BaseProbe
from .registry import EMPIRICAL_PROBES, EXACT_PROBES, PROBES, get_probe
from .report import write_csv

logger = dg.get_dagster_logger("mixnorm_lab.suite")

GLOBAL_KEYS = ("probes", "seed", "trials", "output")

# exit status when a probe fails
PROBE_FAILURE_STATUS = 2


def _expand_probes(value: str) -> list[str]:
    names: list[str] = []
    for token in (t.strip() for t in value.split(",")):
        if not token:
            continue
        if token == "all":
            expanded = list(PROBES)
        elif token == "exact":
            expanded = list(EXACT_PROBES)
        elif token == "empirical":
            expanded = list(EMPIRICAL_PROBES)
        else:
            expanded = [get_probe(token).PROBE_NAME]
        names.extend(name for name in expanded if name not in names)
    return names


def parse_suite_config(text: str) -> SuiteConfig:
    """
    Parse a suite configuration.

    Raises
    ------
    ValueError
        On malformed lines, unknown global keys, unknown probes and values
        that do not parse.
    """
    values: dict[str, str] = {}
    overrides: dict[str, dict[str, str]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ValueError(f"line {number}: expected key=value, got {raw!r}")
        if "." in key:
            probe, _, option = key.partition(".")
            if not option:
                raise ValueError(f"line {number}: empty option name in {key!r}")
            get_probe(probe)
            overrides.setdefault(probe, {})[option] = value
        elif key in GLOBAL_KEYS:
            values[key] = value
        else:
            raise ValueError(
                f"line {number}: unknown key {key!r}; expected one of {GLOBAL_KEYS} "
                "or <probe>.<key>"
            )

    settings: dict[str, object] = {
        "probes": tuple(_expand_probes(values.get("probes", ""))),
        "output": values.get("output") or None,
        "overrides": overrides,
    }
    for key in ("seed", "trials"):
        if key not in values:
            continue
        try:
            settings[key] = int(values[key])
        except ValueError as e:
            raise ValueError(f"{key} must be an integer, got {values[key]!r}") from e
    return SuiteConfig(**settings)


def load_suite_config(path: str) -> SuiteConfig:
    with open(path, encoding="utf-8") as handle:
        return parse_suite_config(handle.read())


def build_probes(config: SuiteConfig, threads: int = 1) -> list[BaseProbe]:
    """Instantiate every enabled probe, so invalid settings fail before any run."""
    probes = []
    for name in config.probes:
        cls = get_probe(name)
        spec = cls.build_spec(
            seed=config.seed,
            trials=config.trials,
            overrides=dict(config.overrides.get(name, {})),
        )
        probes.append(cls(spec, max_workers=threads))
    return probes


def run_suite(config: SuiteConfig, threads: int = 1) -> list[ProbeReport]:
    """Run the enabled probes in config order and write the CSV if configured."""
    probes = build_probes(config, threads)
    logger.info(f"Running suite of {len(probes)} probes with {threads} threads")
    reports = [probe.run() for probe in probes]
    if config.output:
        write_csv(reports, config.output)
        logger.info(f"Wrote {len(reports)} reports to {config.output}")
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.warning(f"✗ suite: {len(failed)} probes failed: {failed}")
    else:
        logger.info(f"✓ suite: {len(reports)} probes passed")
    return reports


def suite_exit_status(reports: list[ProbeReport]) -> int:
    """0 when every report passed, PROBE_FAILURE_STATUS otherwise."""
    return 0 if all(r.passed for r in reports) else PROBE_FAILURE_STATUS
