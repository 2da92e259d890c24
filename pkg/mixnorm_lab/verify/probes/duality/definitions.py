"""Dagster definitions for the duality probes."""

import dagster as dg
from .assets import duality_probes

duality_asset_selection = dg.AssetSelection.assets(duality_probes)

duality_probe_job = dg.define_asset_job(
    name="duality_probe_job",
    selection=duality_asset_selection,
    tags={"family": "duality"},
)

@dg.schedule(
    job=duality_probe_job,
    cron_schedule="0 2 * * 1",
    execution_timezone="Europe/Amsterdam",
    default_status=dg.DefaultScheduleStatus.STOPPED,
)
def duality_weekly_schedule():
    return dg.RunRequest()

defs = dg.Definitions(
    assets=[duality_probes],
    jobs=[duality_probe_job],
    schedules=[duality_weekly_schedule],
)
