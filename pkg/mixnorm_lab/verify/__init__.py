"""
Seeded inequality probes, property suites and CSV reports.
"""

from .base import BaseProbe, TrialOutcome, ratio_of
from .probes.martingale.assets import property_fatou
from .properties import a1_ratio, indicator_oracle_lattice, reveal_ladder
from .random import gen_random_step, make_generator
from .registry import EMPIRICAL_PROBES, EXACT_PROBES, PROBES, get_probe
from .report import reports_to_csv, write_csv
from .suite import (
    load_suite_config,
    parse_suite_config,
    run_suite,
    suite_exit_status,
)

__all__ = [
    "EMPIRICAL_PROBES",
    "EXACT_PROBES",
    "PROBES",
    "BaseProbe",
    "TrialOutcome",
    "a1_ratio",
    "gen_random_step",
    "get_probe",
    "indicator_oracle_lattice",
    "load_suite_config",
    "make_generator",
    "parse_suite_config",
    "property_fatou",
    "ratio_of",
    "reports_to_csv",
    "reveal_ladder",
    "run_suite",
    "suite_exit_status",
    "write_csv",
]
