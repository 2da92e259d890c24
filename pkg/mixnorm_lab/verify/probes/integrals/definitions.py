"""Dagster definitions for the integrals probes."""

import dagster as dg
from .assets import integrals_probes

integrals_asset_selection = dg.AssetSelection.assets(integrals_probes)

integrals_probe_job = dg.define_asset_job(
    name="integrals_probe_job",
    selection=integrals_asset_selection,
    tags={"family": "integrals"},
)

@dg.schedule(
    job=integrals_probe_job,
    cron_schedule="0 2 * * 1",
    execution_timezone="Europe/Amsterdam",
    default_status=dg.DefaultScheduleStatus.STOPPED,
)
def integrals_weekly_schedule():
    return dg.RunRequest()

defs = dg.Definitions(
    assets=[integrals_probes],
    jobs=[integrals_probe_job],
    schedules=[integrals_weekly_schedule],
)
