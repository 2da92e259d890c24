"""Dagster definitions for the martingale probes."""

import dagster as dg
from .assets import martingale_probes

martingale_asset_selection = dg.AssetSelection.assets(martingale_probes)

martingale_probe_job = dg.define_asset_job(
    name="martingale_probe_job",
    selection=martingale_asset_selection,
    tags={"family": "martingale"},
)

@dg.schedule(
    job=martingale_probe_job,
    cron_schedule="0 2 * * 1",
    execution_timezone="Europe/Amsterdam",
    default_status=dg.DefaultScheduleStatus.STOPPED,
)
def martingale_weekly_schedule():
    return dg.RunRequest()

defs = dg.Definitions(
    assets=[martingale_probes],
    jobs=[martingale_probe_job],
    schedules=[martingale_weekly_schedule],
)
