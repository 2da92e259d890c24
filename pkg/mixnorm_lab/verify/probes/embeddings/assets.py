"""
Embedding, dilation, translation and shifted-grid probes.

The first three are exact: the ℓ^r embedding between summability exponents,
the per-cube comparison of exponent vectors and the dyadic dilation identity
hold with constant 1. Translations by non-dyadic amounts and the change to a
shifted dyadic grid only hold up to unstated constants, which are measured.
"""

from __future__ import annotations

import math

import dagster as dg
import numpy as np

from mixnorm_lab.grid import dilate_dyadic, translate
from mixnorm_lab.models import ExponentVector, ProbeKind
from mixnorm_lab.norms import bm_norm, bm_norm_bracket, level_cube_norms
from mixnorm_lab.resources import SuiteSettings
from mixnorm_lab.verify.base import (
    BaseProbe,
    TrialOutcome,
    closeness,
    max_ratio_of,
    ratio_of,
)
from mixnorm_lab.verify.runner import family_output


class EmbeddingProbe(BaseProbe):
    """‖f‖ with summability r₂ ≥ r₁ never exceeds ‖f‖ with r₁."""

    PROBE_NAME = "embedding"
    FAMILY = "embeddings"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "bm_norm(f; r2) / bm_norm(f; r1) for r1 ≤ r2"
    DEFAULT_TRIALS = 200
    DEFAULT_OPTIONS = {"r2": "16"}

    def check_spec(self) -> None:
        r2 = self.spec.option_float("r2", math.inf)
        if r2 < self.params.r:
            raise ValueError(f"r2 = {r2} must not be below r = {self.params.r}")
        self.params.require_nontrivial()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        wider = self.params.with_r(self.spec.option_float("r2", math.inf))
        return TrialOutcome(ratio_of(bm_norm(f, wider), bm_norm(f, self.params)))


class ExponentMonotonicityProbe(BaseProbe):
    """
    Per-cube comparison ‖fχ_Q‖_{p̄} ≤ ℓ(Q)^{Σ1/p_i - Σ1/s_i}‖fχ_Q‖_{s̄} for s̄ ≥ p̄,
    checked on every window cube of the levels [-K, J].
    """

    PROBE_NAME = "exponent_monotonicity"
    FAMILY = "embeddings"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "local L^p̄ norm over the Hölder bound by the larger exponents s̄"
    DEFAULT_TRIALS = 200
    DEFAULT_OPTIONS = {"sbar": "4,8"}

    def _sbar(self) -> ExponentVector:
        return self.spec.option_exponents("sbar", self.params.pbar)

    def check_spec(self) -> None:
        if not self.params.pbar.dominated_by(self._sbar()):
            raise ValueError(
                f"s̄ = ({self._sbar()}) must dominate p̄ = ({self.params.pbar})"
            )

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        pbar, sbar = self.params.pbar, self._sbar()
        gap = pbar.reciprocal_sum - sbar.reciprocal_sum
        worst = 0.0
        for level in range(-f.K, f.J + 1):
            lhs = level_cube_norms(f, level, pbar)
            rhs = math.pow(2.0, -level * gap) * level_cube_norms(f, level, sbar)
            worst = max(worst, max_ratio_of(lhs, rhs))
        return TrialOutcome(worst)


class DyadicDilationProbe(BaseProbe):
    """bm_norm(f(2^k·)) = 2^{-kn/t}·bm_norm(f) exactly."""

    PROBE_NAME = "dyadic_dilation"
    FAMILY = "embeddings"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "relative deviation from the dyadic dilation identity"
    DEFAULT_TRIALS = 200

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        k = int(rng.integers(-2, self.generator.K + 1))
        expected = math.pow(2.0, -k * f.n / self.params.t) * bm_norm(f, self.params)
        dilated = bm_norm(dilate_dyadic(f, k), self.params)
        return TrialOutcome(closeness(dilated, expected))


class TranslationProbe(BaseProbe):
    """bm_norm(f(· - τ)) / bm_norm(f) for grid translations τ of any parity."""

    PROBE_NAME = "translation"
    FAMILY = "embeddings"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "norm growth under non-dyadic translations"

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        cells = 2 ** (self.generator.J + self.generator.K)
        # in units of the unrefined cells, so both runs move f by the same amount
        shift = rng.integers(0, cells, size=f.n) * 2**refine
        moved = translate(f, shift)
        return TrialOutcome(
            ratio_of(bm_norm(moved, self.params), bm_norm(f, self.params))
        )


class ShiftedGridProbe(BaseProbe):
    """
    Two-sided comparison of the norm over a shifted dyadic grid D_ā with the
    standard one; the shifted norm is bracketed, so the ratio takes the
    unfavourable end of the bracket.
    """

    PROBE_NAME = "shifted_grid"
    FAMILY = "embeddings"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "max(‖f‖_{D_ā} / ‖f‖_D, ‖f‖_D / ‖f‖_{D_ā})"
    DEFAULT_TRIALS = 50

    def check_spec(self) -> None:
        self.params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        shift = tuple(int(a) for a in rng.integers(0, 3, size=f.n))
        exact = bm_norm(f, self.params)
        bracket = bm_norm_bracket(f, self.params, f.J + 1, shift)
        ratio = max(ratio_of(bracket.upper, exact), ratio_of(exact, bracket.lower))
        return TrialOutcome(ratio, metrics={"bracket_ratio": bracket.ratio})


EMBEDDING_PROBES: list[type[BaseProbe]] = [
    EmbeddingProbe,
    ExponentMonotonicityProbe,
    DyadicDilationProbe,
    TranslationProbe,
    ShiftedGridProbe,
]


@dg.asset(group_name="probes")
def embeddings_probes(suite_settings: SuiteSettings) -> dg.Output[list[dict]]:
    """Run the embedding, dilation, translation and shifted-grid probes."""
    return family_output("embeddings", EMBEDDING_PROBES, suite_settings)
