"""Dagster definitions for the maximal probes."""

import dagster as dg
from .assets import maximal_probes

maximal_asset_selection = dg.AssetSelection.assets(maximal_probes)

maximal_probe_job = dg.define_asset_job(
    name="maximal_probe_job",
    selection=maximal_asset_selection,
    tags={"family": "maximal"},
)

@dg.schedule(
    job=maximal_probe_job,
    cron_schedule="0 2 * * 1",
    execution_timezone="Europe/Amsterdam",
    default_status=dg.DefaultScheduleStatus.STOPPED,
)
def maximal_weekly_schedule():
    return dg.RunRequest()

defs = dg.Definitions(
    assets=[maximal_probes],
    jobs=[maximal_probe_job],
    schedules=[maximal_weekly_schedule],
)
