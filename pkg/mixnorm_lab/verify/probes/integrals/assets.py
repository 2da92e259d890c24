"""
Fractional and singular integral probes.

Operator outputs are cell-center samples restricted to the window, so the
norms on the left are norms of a proxy and every constant is empirical.
"""

from __future__ import annotations

import dagster as dg
import numpy as np

from mixnorm_lab.grid import StepFunction
from mixnorm_lab.models import ExponentVector, GeneratorSpec, ProbeKind, SpaceParams
from mixnorm_lab.norms import bm_norm, morrey_norm
from mixnorm_lab.operators import (
    FracParams,
    SingularKernelModel,
    frac_integral,
    hl_maximal_lower,
    singular_apply,
)
from mixnorm_lab.resources import SuiteSettings
from mixnorm_lab.verify.base import BaseProbe, TrialOutcome, max_ratio_of, ratio_of
from mixnorm_lab.verify.runner import family_output

LINE_GENERATOR = GeneratorSpec(n=1, J=2, K=2)


def _output_tags(output: StepFunction) -> tuple[str, ...]:
    return ("center_samples", "approx") if output.approximate else ("center_samples",)


def coupled_params(params: SpaceParams, alpha: float) -> SpaceParams:
    """
    Target parameters of I_α: 1/t₂ = 1/t₁ - α/n, with p̄ and r scaled by t₂/t₁
    so that t₁p̄₂ = t₂p̄₁ and t₁r₂ = t₂r₁.
    """
    FracParams(alpha=alpha).check_dimension(params.n)
    gap = 1.0 / params.t - alpha / params.n
    if not gap > 0:
        raise ValueError(f"1/t - α/n = {gap} must be positive")
    t2 = 1.0 / gap
    scale = t2 / params.t
    return SpaceParams(
        pbar=ExponentVector(entries=tuple(p * scale for p in params.pbar.entries)),
        t=t2,
        r=params.r * scale,
    )


class FractionalProbe(BaseProbe):
    """‖I_α f‖ in the coupled target space over ‖f‖ in the source space."""

    PROBE_NAME = "fractional"
    FAMILY = "integrals"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "fractional integral between parameter-coupled spaces"
    DEFAULT_TRIALS = 50
    DEFAULT_PARAMS = SpaceParams.of("2", 3, 6)
    DEFAULT_GENERATOR = LINE_GENERATOR
    DEFAULT_OPTIONS = {"alpha": "0.25"}

    def check_spec(self) -> None:
        self.params.require_finite()
        coupled_params(self.params, self.spec.option_float("alpha", 0.25))

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        alpha = self.spec.option_float("alpha", 0.25)
        output = frac_integral(f, alpha)
        target = coupled_params(self.params, alpha)
        return TrialOutcome(
            ratio_of(bm_norm(output, target), bm_norm(f, self.params)),
            tags=_output_tags(output),
        )


class PointwiseFractionalProbe(BaseProbe):
    """
    I_α f(x) ≤ C‖f‖_{Morrey}^{tα/n}·Mf(x)^{1-tα/n} at every cell center for
    f ≥ 0, with Mf the maximal proxy sampled at the same centers.
    """

    PROBE_NAME = "pointwise_fractional"
    FAMILY = "integrals"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "pointwise interpolation bound for the fractional integral"
    DEFAULT_TRIALS = 50
    DEFAULT_PARAMS = SpaceParams.of("2", 3, float("inf"))
    DEFAULT_GENERATOR = LINE_GENERATOR
    DEFAULT_OPTIONS = {"alpha": "0.25"}

    def _theta(self) -> float:
        alpha = self.spec.option_float("alpha", 0.25)
        return self.params.t * alpha / self.params.n

    def check_spec(self) -> None:
        self.params.require_nontrivial()
        FracParams(alpha=self.spec.option_float("alpha", 0.25)).check_dimension(
            self.params.n
        )
        if not self._theta() < 1:
            raise ValueError(f"tα/n = {self._theta()} must be below 1")

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine).abs()
        alpha = self.spec.option_float("alpha", 0.25)
        theta = self._theta()
        output = frac_integral(f, alpha)
        # the depth 0 centers are the middle third-cells
        centers = tuple(slice(1, None, 3) for _ in range(f.n))
        maximal = hl_maximal_lower(f).values[centers]
        morrey = morrey_norm(f, self.params.with_r(float("inf")))
        bound = morrey**theta * np.power(maximal, 1.0 - theta)
        return TrialOutcome(
            max_ratio_of(output.values, bound), tags=_output_tags(output)
        )


class HilbertProbe(BaseProbe):
    """‖Hf‖ / ‖f‖ on the line."""

    PROBE_NAME = "hilbert"
    FAMILY = "integrals"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "Hilbert transform on the Bourgain-Morrey space"
    DEFAULT_TRIALS = 50
    DEFAULT_PARAMS = SpaceParams.of("2", 3, 6)
    DEFAULT_GENERATOR = LINE_GENERATOR

    def check_spec(self) -> None:
        SingularKernelModel.hilbert().check_dimension(self.params.n)
        self.params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        output = singular_apply(f, SingularKernelModel.hilbert())
        return TrialOutcome(
            ratio_of(bm_norm(output, self.params), bm_norm(f, self.params)),
            tags=_output_tags(output),
        )


class RieszProbe(BaseProbe):
    """
    ‖R_{j,ε}f‖ / ‖f‖ for a truncated Riesz transform.

    ε is a length, not a cell count, and the transform is sampled on the
    grid three levels below the generator's, so refining the input leaves
    both the truncation and the sample points where they are.
    """

    PROBE_NAME = "riesz"
    FAMILY = "integrals"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "truncated Riesz transform on the Bourgain-Morrey space"
    DEFAULT_TRIALS = 30
    DEFAULT_PARAMS = SpaceParams.of("2,2", 3, 6)
    DEFAULT_OPTIONS = {"axis": "0", "epsilon": "0.125", "oversample": "3"}

    def _kernel(self) -> SingularKernelModel:
        return SingularKernelModel.riesz(
            axis=self.spec.option_int("axis", 0),
            epsilon=self.spec.option_float("epsilon", 0.125),
        )

    def check_spec(self) -> None:
        self._kernel().check_dimension(self.params.n)
        self.params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.evaluation_grid(self.draw(rng, refine))
        output = singular_apply(f, self._kernel())
        return TrialOutcome(
            ratio_of(bm_norm(output, self.params), bm_norm(f, self.params)),
            tags=_output_tags(output),
        )


INTEGRAL_PROBES: list[type[BaseProbe]] = [
    FractionalProbe,
    PointwiseFractionalProbe,
    HilbertProbe,
    RieszProbe,
]


@dg.asset(group_name="probes")
def integrals_probes(suite_settings: SuiteSettings) -> dg.Output[list[dict]]:
    """Run the fractional, pointwise fractional, Hilbert and Riesz probes."""
    return family_output("integrals", INTEGRAL_PROBES, suite_settings)
