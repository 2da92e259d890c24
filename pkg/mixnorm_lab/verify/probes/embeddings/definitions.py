"""Dagster definitions for the embedding probes."""

import dagster as dg
from .assets import embeddings_probes

embeddings_asset_selection = dg.AssetSelection.assets(embeddings_probes)

embeddings_probe_job = dg.define_asset_job(
    name="embeddings_probe_job",
    selection=embeddings_asset_selection,
    tags={"family": "embeddings"},
)

@dg.schedule(
    job=embeddings_probe_job,
    cron_schedule="0 2 * * 1",
    execution_timezone="Europe/Amsterdam",
    default_status=dg.DefaultScheduleStatus.STOPPED,
)
def embeddings_weekly_schedule():
    return dg.RunRequest()

defs = dg.Definitions(
    assets=[embeddings_probes],
    jobs=[embeddings_probe_job],
    schedules=[embeddings_weekly_schedule],
)
