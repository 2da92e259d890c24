"""Tests for the Dagster definitions."""

import dagster as dg

from mixnorm_lab.definitions import defs
from mixnorm_lab.resources import SuiteSettings
from mixnorm_lab.verify.probes.convolution.assets import convolution_probes


def test_definitions_load():
    """Test that the merged definitions expose every family job."""
    families = ("embeddings", "convolution", "martingale", "maximal", "integrals")
    for family in (*families, "duality"):
        assert defs.get_job_def(f"{family}_probe_job") is not None
    assert defs.get_job_def("all_probes_job") is not None


def test_materialize_family_asset(tmp_path):
    """Test one family asset end to end with a small trial count."""
    settings = SuiteSettings(seed=3, trials=2, output_dir=str(tmp_path))
    result = dg.materialize(
        [convolution_probes], resources={"suite_settings": settings}
    )

    assert result.success
    reports = result.output_for_node("convolution_probes")
    assert [report["name"] for report in reports] == ["convolution_mass", "young"]
    assert (tmp_path / "convolution_probes.csv").exists()
