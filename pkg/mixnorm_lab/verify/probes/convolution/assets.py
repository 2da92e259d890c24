"""
Convolution probes.

The projected convolution E_J(f * g) keeps the mass of f * g exactly, and for
non-negative inputs its L¹ norm is ‖f‖₁‖g‖₁. Young's inequality for the
Bourgain-Morrey norms is checked one-sidedly: E_J only lowers the left side.
"""

from __future__ import annotations

import dagster as dg
import numpy as np

from mixnorm_lab.models import ExponentVector, ProbeKind, SpaceParams
from mixnorm_lab.norms import bm_norm, mixed_norm
from mixnorm_lab.operators import convolve_project
from mixnorm_lab.resources import SuiteSettings
from mixnorm_lab.verify.base import BaseProbe, TrialOutcome, closeness, ratio_of
from mixnorm_lab.verify.runner import family_output


class ConvolutionMassProbe(BaseProbe):
    """∫E_J(f * g) = ∫f·∫g and ‖E_J(|f| * |g|)‖₁ = ‖f‖₁‖g‖₁."""

    PROBE_NAME = "convolution_mass"
    FAMILY = "convolution"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "relative deviation from the mass and L¹ identities"
    DEFAULT_TRIALS = 200

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        g = self.draw(rng, refine)
        ones = ExponentVector.uniform(1.0, f.n)
        f_mass, g_mass = mixed_norm(f, ones), mixed_norm(g, ones)
        scale = f_mass * g_mass
        mass = closeness(
            convolve_project(f, g).integral(), f.integral() * g.integral(), scale
        )
        l1 = closeness(mixed_norm(convolve_project(f.abs(), g.abs()), ones), scale)
        return TrialOutcome(max(mass, l1))


class YoungProbe(BaseProbe):
    """
    ‖E_J(f * g)‖_{M^{t,r}_{p̄}} over ‖f‖_{M^{t₀,r₀}_{s̄₀}}‖g‖_{M^{t₁,r₁}_{s̄₁}}
    with 1/p̄ + 1 = 1/s̄₀ + 1/s̄₁, 1/t + 1 = 1/t₀ + 1/t₁ and 1/r + 1 = 1/r₀ + 1/r₁.
    """

    PROBE_NAME = "young"
    FAMILY = "convolution"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "Young's inequality for the projected convolution"
    DEFAULT_TRIALS = 50
    DEFAULT_PARAMS = SpaceParams.of("2,4", 4, 8)
    DEFAULT_OPTIONS = {
        "s0": "1.3333333333333333,1.6",
        "t0": "1.6",
        "r0": "1.7777777777777777",
        "s1": "1.3333333333333333,1.6",
        "t1": "1.6",
        "r1": "1.7777777777777777",
    }

    def factor_params(self) -> tuple[SpaceParams, SpaceParams]:
        first = SpaceParams(
            pbar=self.spec.option_exponents("s0", self.params.pbar),
            t=self.spec.option_float("t0", self.params.t),
            r=self.spec.option_float("r0", self.params.r),
        )
        second = SpaceParams(
            pbar=self.spec.option_exponents("s1", self.params.pbar),
            t=self.spec.option_float("t1", self.params.t),
            r=self.spec.option_float("r1", self.params.r),
        )
        return first, second

    def check_spec(self) -> None:
        first, second = self.factor_params()
        for label, target, a, b in [
            ("t", self.params.t, first.t, second.t),
            ("r", self.params.r, first.r, second.r),
        ] + [
            (f"p_{i + 1}", p, s0, s1)
            for i, (p, s0, s1) in enumerate(
                zip(self.params.pbar.entries, first.pbar.entries, second.pbar.entries)
            )
        ]:
            if abs(1.0 / target + 1.0 - 1.0 / a - 1.0 / b) > 1e-9:
                raise ValueError(
                    f"Young relation fails for {label}: 1/{label} + 1 must equal "
                    "the sum of the factor reciprocals"
                )
        for params in (self.params, first, second):
            params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        g = self.draw(rng, refine)
        first, second = self.factor_params()
        lhs = bm_norm(convolve_project(f, g), self.params)
        return TrialOutcome(ratio_of(lhs, bm_norm(f, first) * bm_norm(g, second)))


CONVOLUTION_PROBES: list[type[BaseProbe]] = [ConvolutionMassProbe, YoungProbe]


@dg.asset(group_name="probes")
def convolution_probes(suite_settings: SuiteSettings) -> dg.Output[list[dict]]:
    """Run the convolution mass and Young probes."""
    return family_output("convolution", CONVOLUTION_PROBES, suite_settings)
