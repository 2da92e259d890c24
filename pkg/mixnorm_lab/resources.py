"""
Shared resources for all probe assets.

This module defines the configurable settings every probe family asset
reads: thread count, seed, trial count and the CSV output directory.
"""

import dagster as dg

THREADS_ENV_VAR = "MIXNORM_THREADS"


def default_thread_count() -> int:
    """Thread cap from MIXNORM_THREADS, 1 when unset."""
    raw = dg.EnvVar(THREADS_ENV_VAR).get_value(default="1") or "1"
    try:
        threads = int(raw)
    except ValueError as e:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from e
    if threads < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be at least 1, got {threads}")
    return threads


class SuiteSettings(dg.ConfigurableResource):
    """
    Configuration for probe runs.
    """

    # Worker threads per probe; reports do not depend on it
    threads: int = 1

    # Base seed of every probe
    seed: int = 20240601

    # Trials per probe, None keeps each probe's default
    trials: int | None = None

    # Output directory for CSV reports
    output_dir: str = "./output"


defs = dg.Definitions(
    resources={
        "suite_settings": SuiteSettings(
            threads=default_thread_count(),
            output_dir=dg.EnvVar("OUTPUT_DIR").get_value(default="./output")
            or "./output",
        ),
    }
)
