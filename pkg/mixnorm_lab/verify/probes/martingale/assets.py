"""
Martingale probes.

Conditional expectations contract every mixed norm, satisfy the tower
property and keep the mass; Doob's maximal function is bounded on L^{p̄} for
p̄ > 1. The martingale approximation f - E_k f vanishes at the resolution
level, and monotone cell-reveal ladders never lose norm.
"""

from __future__ import annotations

import dagster as dg
import numpy as np

from mixnorm_lab.grid import align
from mixnorm_lab.models import ExponentVector, ProbeKind, ProbeReport, SpaceParams
from mixnorm_lab.norms import bm_norm, mixed_norm
from mixnorm_lab.operators import cond_expect, doob_maximal
from mixnorm_lab.resources import SuiteSettings
from mixnorm_lab.verify.base import BaseProbe, TrialOutcome, closeness, ratio_of
from mixnorm_lab.verify.properties import reveal_ladder
from mixnorm_lab.verify.runner import family_output


class ConditionalExpectationProbe(BaseProbe):
    """Contraction, tower property and mass preservation of E_k."""

    PROBE_NAME = "conditional_expectation"
    FAMILY = "martingale"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "‖E_k f‖/‖f‖ and deviations from E_j E_k = E_min(j,k), ∫E_k f = ∫f"
    DEFAULT_TRIALS = 200

    def check_spec(self) -> None:
        if min(self.params.pbar.entries) < 1:
            raise ValueError("conditional expectations contract L^p̄ only for p̄ ≥ 1")

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        low, high = -f.K - 1, f.J + 1
        k = int(rng.integers(low, high))
        j = int(rng.integers(low, high))
        coarse = cond_expect(f, k)
        contraction = ratio_of(
            mixed_norm(coarse, self.params.pbar), mixed_norm(f, self.params.pbar)
        )
        nested, direct = align(cond_expect(coarse, j), cond_expect(f, min(j, k)))
        gap = float(np.max(np.abs(nested.values - direct.values)))
        tower = closeness(gap, 0.0, scale=f.max_abs())
        ones = ExponentVector.uniform(1.0, f.n)
        mass = closeness(coarse.integral(), f.integral(), scale=mixed_norm(f, ones))
        return TrialOutcome(max(contraction, tower, mass))


class DoobProbe(BaseProbe):
    """‖𝕄f‖_{L^{p̄}} / ‖f‖_{L^{p̄}} for the dyadic maximal function 𝕄 = sup_k E_k."""

    PROBE_NAME = "doob"
    FAMILY = "martingale"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "Doob's maximal inequality on the mixed Lebesgue space"

    def check_spec(self) -> None:
        if min(self.params.pbar.entries) <= 1:
            raise ValueError("Doob's inequality needs p_i > 1 on every axis")

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        pbar = self.params.pbar
        return TrialOutcome(
            ratio_of(mixed_norm(doob_maximal(f), pbar), mixed_norm(f, pbar))
        )


class MartingaleApproximationProbe(BaseProbe):
    """
    d_k = ‖f - E_k f‖ over k ∈ [-K, J] reaches 0 at k = J.

    The ratio is the deviation of d_J from 0; the largest step d_{k+1}/d_k is
    reported as a metric and not asserted. d_k need not decrease step by step:
    f - E_{k+1}f = (I - E_{k+1})(f - E_k f) and I - E_{k+1} is no contraction
    on M^{t,r}_{p̄}, so random inputs show steps above 1.
    """

    PROBE_NAME = "martingale_approximation"
    FAMILY = "martingale"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "‖f - E_J f‖ / ‖f‖ with the step ratios of ‖f - E_k f‖"
    DEFAULT_TRIALS = 200

    def check_spec(self) -> None:
        self.params.require_nontrivial()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        gaps = [
            bm_norm(f - cond_expect(f, k), self.params)
            for k in range(-f.K, f.J + 1)
        ]
        steps = [ratio_of(b, a) for a, b in zip(gaps, gaps[1:]) if a > 0]
        metrics = {"max_step_ratio": max(steps)} if steps else {}
        ratio = closeness(gaps[-1], 0.0, scale=bm_norm(f, self.params))
        return TrialOutcome(ratio, metrics=metrics)


class FatouProbe(BaseProbe):
    """
    Monotone ladders revealed cell by cell: the norms never decrease along the
    ladder and end exactly at the norm of f; |g| ≤ |f| gives ‖g‖ ≤ ‖f‖.
    """

    PROBE_NAME = "fatou"
    FAMILY = "martingale"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "ladder and lattice monotonicity of bm_norm and mixed_norm"
    DEFAULT_TRIALS = 200
    DEFAULT_OPTIONS = {"steps": "8"}

    def check_spec(self) -> None:
        self.params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        ladder = reveal_ladder(f, rng, self.spec.option_int("steps", 8))
        worst = 0.0
        for norm in (
            lambda h: bm_norm(h, self.params),
            lambda h: mixed_norm(h, self.params.pbar),
        ):
            values = [norm(h) for h in ladder]
            for a, b in zip(values, values[1:]):
                worst = max(worst, ratio_of(a, b))
            worst = max(worst, closeness(values[-1], norm(f)))
        damped = f.with_values(f.values * rng.uniform(-1.0, 1.0, size=f.values.shape))
        ratio = ratio_of(bm_norm(damped, self.params), bm_norm(f, self.params))
        worst = max(worst, ratio)
        return TrialOutcome(worst)


def property_fatou(
    params: SpaceParams, seed: int, trials: int | None = None
) -> ProbeReport:
    """Run the Fatou ladder and lattice checks under the given parameters."""
    params.require_finite()
    spec = FatouProbe.build_spec(seed=seed, trials=trials)
    generator = spec.generator.model_copy(update={"n": params.n})
    spec = spec.model_copy(update={"params": params, "generator": generator})
    return FatouProbe(spec).run()


MARTINGALE_PROBES: list[type[BaseProbe]] = [
    ConditionalExpectationProbe,
    DoobProbe,
    MartingaleApproximationProbe,
    FatouProbe,
]


@dg.asset(group_name="probes")
def martingale_probes(suite_settings: SuiteSettings) -> dg.Output[list[dict]]:
    """Run the conditional expectation, Doob, approximation and Fatou probes."""
    return family_output("martingale", MARTINGALE_PROBES, suite_settings)
