"""
Running groups of probes and packaging them as Dagster outputs.
"""

from __future__ import annotations

import math
import os
from collections.abc import Mapping, Sequence

import dagster as dg

from mixnorm_lab.models import ProbeReport
from mixnorm_lab.resources import SuiteSettings

from .base import BaseProbe
from .report import write_csv

logger = dg.get_dagster_logger("mixnorm_lab.verify")


def run_probes(
    classes: Sequence[type[BaseProbe]],
    seed: int,
    trials: int | None = None,
    threads: int = 1,
    overrides: Mapping[str, Mapping[str, str]] | None = None,
) -> list[ProbeReport]:
    """Run probes in the given order; per-probe overrides are keyed by probe name."""
    overrides = overrides or {}
    reports = []
    for cls in classes:
        spec = cls.build_spec(
            seed=seed, trials=trials, overrides=dict(overrides.get(cls.PROBE_NAME, {}))
        )
        reports.append(cls(spec, max_workers=threads).run())
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.warning(f"✗ {len(failed)} of {len(reports)} probes failed: {failed}")
    else:
        logger.info(f"✓ all {len(reports)} probes passed")
    return reports


def family_output(
    family: str,
    classes: Sequence[type[BaseProbe]],
    settings: SuiteSettings,
) -> dg.Output[list[dict]]:
    """Run one probe family and write its CSV under the output directory."""
    reports = run_probes(classes, settings.seed, settings.trials, settings.threads)
    path = write_csv(reports, os.path.join(settings.output_dir, f"{family}_probes.csv"))
    finite = [r.max_ratio for r in reports if not math.isnan(r.max_ratio)]
    return dg.Output(
        value=[r.model_dump(mode="json", by_alias=True) for r in reports],
        metadata={
            "family": family,
            "probes": len(reports),
            "failed": sum(not r.passed for r in reports),
            "largest_ratio": max(finite) if finite else float("nan"),
            "output_file": path,
        },
    )
