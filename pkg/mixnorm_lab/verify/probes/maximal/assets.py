"""
Maximal operator probes.

The grid-restricted operators are lower proxies of the continuous ones, so
every ratio here is an empirical constant: finite and stable under one
refinement of the inputs is all that is asserted.
"""

from __future__ import annotations

import dagster as dg
import numpy as np

from mixnorm_lab.grid import StepFunction, VectorStepFunction
from mixnorm_lab.models import ProbeKind, SpaceParams
from mixnorm_lab.norms import (
    bm_norm,
    bm_norm_bracket,
    vector_bm_norm,
    weighted_bm_level_sum,
)
from mixnorm_lab.operators import (
    hl_maximal_lower,
    iterated_maximal_grid,
    mit_chi_weight,
)
from mixnorm_lab.resources import SuiteSettings
from mixnorm_lab.verify.base import BaseProbe, TrialOutcome, ratio_of
from mixnorm_lab.verify.properties import a1_ratio
from mixnorm_lab.verify.random import draw_cube
from mixnorm_lab.verify.runner import family_output

MAXIMAL_PARAMS = SpaceParams.of("2,2", 3, 12)


def _upper_norm(g: StepFunction, params: SpaceParams) -> float:
    """The upper end of the bracket for a depth 1 operator output."""
    return bm_norm_bracket(g, params, g.J + 1).upper


def _check_iterated_window(params: SpaceParams) -> None:
    """The iterated maximal operator needs σ - 1/t + 1/r < 1/max p̄."""
    params.require_finite()
    low = params.sigma - 1.0 / params.t + 1.0 / params.r
    if not low < 1.0 / params.pbar.max_entry:
        raise ValueError(
            f"no η in ({low}, {1.0 / params.pbar.max_entry}) for {params.label()}"
        )


class HLMaximalProbe(BaseProbe):
    """‖max_ā M_{D_ā}f‖ / ‖f‖ on the Bourgain-Morrey space."""

    PROBE_NAME = "hl_maximal"
    FAMILY = "maximal"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "Hardy-Littlewood maximal proxy, bracket upper end over bm_norm"
    DEFAULT_TRIALS = 50
    DEFAULT_PARAMS = MAXIMAL_PARAMS

    def check_spec(self) -> None:
        self.params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        maximal = hl_maximal_lower(f)
        return TrialOutcome(
            ratio_of(_upper_norm(maximal, self.params), bm_norm(f, self.params)),
            tags=("bracket_upper",),
        )


class IteratedMaximalProbe(BaseProbe):
    """‖M^{(it)}f‖ / ‖f‖ inside the exponent window of the iterated operator."""

    PROBE_NAME = "iterated_maximal"
    FAMILY = "maximal"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "iterated maximal operator on the Bourgain-Morrey space"
    DEFAULT_PARAMS = MAXIMAL_PARAMS

    def check_spec(self) -> None:
        _check_iterated_window(self.params)

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        return TrialOutcome(
            ratio_of(
                bm_norm(iterated_maximal_grid(f), self.params),
                bm_norm(f, self.params),
            )
        )


class WeightedEquivalenceProbe(BaseProbe):
    """
    The norm rebuilt from the weights (M^{(it)}χ_Q)^η over the norm itself.

    The weighted cube sum runs over the window cubes of the levels
    [-K-1, J+2] of the unrefined grid, the same levels in both runs. The A₁
    ratio of the axis weights (M χ_I)^{ηp_i} of a random cube is reported.
    """

    PROBE_NAME = "weighted_equivalence"
    FAMILY = "maximal"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "weighted cube sum with iterated maximal weights over bm_norm"
    DEFAULT_TRIALS = 20
    DEFAULT_PARAMS = MAXIMAL_PARAMS
    DEFAULT_OPTIONS = {"eta": "0.375"}

    def _eta(self) -> float:
        return self.spec.option_float("eta", 0.375)

    def check_spec(self) -> None:
        _check_iterated_window(self.params)
        eta = self._eta()
        low = self.params.sigma - 1.0 / self.params.t + 1.0 / self.params.r
        if not low < eta < 1.0 / self.params.pbar.max_entry:
            raise ValueError(
                f"η = {eta} outside ({low}, {1.0 / self.params.pbar.max_entry})"
            )

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        eta = self._eta()
        J, K = self.generator.J, self.generator.K
        levels = range(-K - 1, J + 3)
        weighted = weighted_bm_level_sum(f, self.params, eta, levels)
        cube = draw_cube(rng, f.n, J, K)
        a1 = max(
            a1_ratio(mit_chi_weight(cube, eta * p, K)[axis], range(-K, J + 1))
            for axis, p in enumerate(self.params.pbar.entries)
        )
        return TrialOutcome(
            ratio_of(weighted, bm_norm(f, self.params)), metrics={"a1_ratio": a1}
        )


class _VectorProbe(BaseProbe):
    """Shared drawing of N-component inputs."""

    DEFAULT_PARAMS = MAXIMAL_PARAMS
    DEFAULT_TRIALS = 30
    DEFAULT_OPTIONS = {"components": "3", "u": "2"}

    def _u(self) -> float:
        return self.spec.option_float("u", 2.0)

    def check_spec(self) -> None:
        self.params.require_finite()
        if self.spec.option_int("components", 3) < 1:
            raise ValueError("vector probes need at least one component")
        if not self._u() > 1:
            raise ValueError(f"ℓ^u needs u > 1, got {self._u()}")

    def draw_vector(self, rng: np.random.Generator, refine: int) -> VectorStepFunction:
        count = self.spec.option_int("components", 3)
        return VectorStepFunction.of([self.draw(rng, refine) for _ in range(count)])


class VectorMaximalProbe(_VectorProbe):
    """‖(Σ_k (Mf_k)^u)^{1/u}‖ / ‖(Σ_k |f_k|^u)^{1/u}‖ with the maximal proxy."""

    PROBE_NAME = "vector_maximal"
    FAMILY = "maximal"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "ℓ^u-valued maximal inequality"

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        fv = self.draw_vector(rng, refine)
        u = self._u()
        maximal = fv.map(hl_maximal_lower).lp_combine(u)
        return TrialOutcome(
            ratio_of(
                _upper_norm(maximal, self.params),
                vector_bm_norm(fv, self.params, u),
            ),
            tags=("bracket_upper",),
        )


class DoubleVectorMaximalProbe(_VectorProbe):
    """The doubly indexed version with ℓ^{u₂} inside and ℓ^{u₁} outside."""

    PROBE_NAME = "double_vector_maximal"
    FAMILY = "maximal"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "ℓ^{u1}(ℓ^{u2})-valued maximal inequality"
    DEFAULT_TRIALS = 20
    DEFAULT_OPTIONS = {"rows": "2", "cols": "2", "u1": "2", "u2": "3"}

    def _exponents(self) -> tuple[float, float]:
        return (
            self.spec.option_float("u1", 2.0),
            self.spec.option_float("u2", 3.0),
        )

    def check_spec(self) -> None:
        self.params.require_finite()
        if min(self.spec.option_int("rows", 2), self.spec.option_int("cols", 2)) < 1:
            raise ValueError("the double index needs at least one row and column")
        if min(self._exponents()) <= 1:
            raise ValueError(f"ℓ^u needs u > 1, got {self._exponents()}")

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        rows = self.spec.option_int("rows", 2)
        cols = self.spec.option_int("cols", 2)
        u1, u2 = self._exponents()
        table = [
            VectorStepFunction.of([self.draw(rng, refine) for _ in range(cols)])
            for _ in range(rows)
        ]

        def combine(vectors: list[VectorStepFunction]) -> StepFunction:
            inner = [v.lp_combine(u2) for v in vectors]
            return VectorStepFunction.of(inner).lp_combine(u1)

        maximal = combine([row.map(hl_maximal_lower) for row in table])
        return TrialOutcome(
            ratio_of(
                _upper_norm(maximal, self.params),
                bm_norm(combine(table), self.params),
            ),
            tags=("bracket_upper",),
        )


class VectorIteratedMaximalProbe(_VectorProbe):
    """The ℓ^u-valued inequality for the iterated maximal operator."""

    PROBE_NAME = "vector_iterated_maximal"
    FAMILY = "maximal"
    KIND = ProbeKind.EMPIRICAL
    DESCRIPTION = "ℓ^u-valued iterated maximal inequality"

    def check_spec(self) -> None:
        super().check_spec()
        _check_iterated_window(self.params)

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        fv = self.draw_vector(rng, refine)
        u = self._u()
        maximal = fv.map(iterated_maximal_grid)
        return TrialOutcome(
            ratio_of(
                vector_bm_norm(maximal, self.params, u),
                vector_bm_norm(fv, self.params, u),
            )
        )


MAXIMAL_PROBES: list[type[BaseProbe]] = [
    HLMaximalProbe,
    IteratedMaximalProbe,
    WeightedEquivalenceProbe,
    VectorMaximalProbe,
    DoubleVectorMaximalProbe,
    VectorIteratedMaximalProbe,
]


@dg.asset(group_name="probes")
def maximal_probes(suite_settings: SuiteSettings) -> dg.Output[list[dict]]:
    """Run the scalar and vector-valued maximal operator probes."""
    return family_output("maximal", MAXIMAL_PROBES, suite_settings)
