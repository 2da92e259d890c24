"""Dagster definitions for the convolution probes."""

import dagster as dg
from .assets import convolution_probes

convolution_asset_selection = dg.AssetSelection.assets(convolution_probes)

convolution_probe_job = dg.define_asset_job(
    name="convolution_probe_job",
    selection=convolution_asset_selection,
    tags={"family": "convolution"},
)

@dg.schedule(
    job=convolution_probe_job,
    cron_schedule="0 2 * * 1",
    execution_timezone="Europe/Amsterdam",
    default_status=dg.DefaultScheduleStatus.STOPPED,
)
def convolution_weekly_schedule():
    return dg.RunRequest()

defs = dg.Definitions(
    assets=[convolution_probes],
    jobs=[convolution_probe_job],
    schedules=[convolution_weekly_schedule],
)
