"""
Aggregation of the probe definitions from every family.
"""

import dagster as dg

from .probes.convolution import definitions as convolution_defs
from .probes.duality import definitions as duality_defs
from .probes.embeddings import definitions as embeddings_defs
from .probes.integrals import definitions as integrals_defs
from .probes.martingale import definitions as martingale_defs
from .probes.maximal import definitions as maximal_defs

# Import all family assets for the combined job
from .probes.convolution.assets import convolution_probes
from .probes.duality.assets import duality_probes
from .probes.embeddings.assets import embeddings_probes
from .probes.integrals.assets import integrals_probes
from .probes.martingale.assets import martingale_probes
from .probes.maximal.assets import maximal_probes


all_probes_selection = dg.AssetSelection.assets(
    embeddings_probes,
    convolution_probes,
    martingale_probes,
    maximal_probes,
    integrals_probes,
    duality_probes,
)

all_probes_job = dg.define_asset_job(
    name="all_probes_job",
    selection=all_probes_selection,
    description="Run every probe family",
    tags={"type": "full_suite"},
)


@dg.schedule(
    job=all_probes_job,
    cron_schedule="0 3 * * *",  # Every night at 3:00 AM CET
    execution_timezone="Europe/Amsterdam",
    default_status=dg.DefaultScheduleStatus.STOPPED,
)
def all_probes_nightly_schedule():
    """Nightly schedule running the full probe suite."""
    return dg.RunRequest()


defs = dg.Definitions.merge(
    embeddings_defs.defs,
    convolution_defs.defs,
    martingale_defs.defs,
    maximal_defs.defs,
    integrals_defs.defs,
    duality_defs.defs,
    dg.Definitions(
        jobs=[all_probes_job],
        schedules=[all_probes_nightly_schedule],
    ),
)
