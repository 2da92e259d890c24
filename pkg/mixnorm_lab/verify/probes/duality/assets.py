"""
Hölder, attainer and block-space duality probes.
"""

from __future__ import annotations

from abc import abstractmethod

import dagster as dg
import numpy as np

from mixnorm_lab.blocks import (
    block_split,
    h_norm_lower,
    h_norm_upper,
    holder_attainer,
    is_block,
    pairing,
    unit_dual,
)
from mixnorm_lab.grid import StepFunction, restrict
from mixnorm_lab.models import ExponentVector, GeneratorSpec, ProbeKind, SpaceParams
from mixnorm_lab.norms import bm_norm, mixed_norm
from mixnorm_lab.operators import (
    SingularKernelModel,
    iterated_maximal_grid,
    singular_apply,
)
from mixnorm_lab.resources import SuiteSettings
from mixnorm_lab.verify.base import BaseProbe, TrialOutcome, closeness, ratio_of
from mixnorm_lab.verify.random import draw_cube
from mixnorm_lab.verify.runner import family_output


class HolderProbe(BaseProbe):
    """
    ‖fg‖_{r̄} ≤ ‖f‖_{p̄}‖g‖_{q̄} with 1/r̄ = 1/p̄ + 1/q̄, and equality
    ∫f·g* = ‖f‖_{p̄}, ‖g*‖_{p̄′} = 1 at the extremizer g*.
    """

    PROBE_NAME = "holder"
    FAMILY = "duality"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "Hölder ratio and deviation from the extremizer identities"
    DEFAULT_TRIALS = 200
    DEFAULT_OPTIONS = {"qbar": "4,4"}

    def _exponents(self) -> tuple[ExponentVector, ExponentVector]:
        qbar = self.spec.option_exponents("qbar", self.params.pbar)
        rbar = ExponentVector(
            entries=tuple(
                1.0 / (a + b)
                for a, b in zip(self.params.pbar.reciprocals, qbar.reciprocals)
            )
        )
        return qbar, rbar

    def check_spec(self) -> None:
        if not self.params.pbar.strictly_between_one_and_infinity():
            raise ValueError("the extremizer needs 1 < p_i < ∞")
        qbar, _ = self._exponents()
        if qbar.n != self.params.n:
            raise ValueError("q̄ and p̄ have different lengths")

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        g = self.draw(rng, refine)
        pbar = self.params.pbar
        qbar, rbar = self._exponents()
        holder = ratio_of(
            mixed_norm(f * g, rbar), mixed_norm(f, pbar) * mixed_norm(g, qbar)
        )
        if f.is_zero():
            return TrialOutcome(holder)
        dual = unit_dual(f, pbar)
        attained = closeness(pairing(f, dual), mixed_norm(f, pbar))
        unit = closeness(mixed_norm(dual, pbar.conjugate()), 1.0)
        return TrialOutcome(max(holder, attained, unit))


class AttainerProbe(BaseProbe):
    """
    For g = holder_attainer(f, Q): ∫fχ_Q g = |Q|^{1/t-σ}‖fχ_Q‖_{p̄},
    ‖g‖_{p̄′} = |Q|^{1/t-σ} and g is a block on Q.
    """

    PROBE_NAME = "attainer"
    FAMILY = "duality"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "deviation from the attainer identities on random cubes"
    DEFAULT_TRIALS = 200

    def check_spec(self) -> None:
        if not self.params.pbar.strictly_between_one_and_infinity():
            raise ValueError("the attainer needs 1 < p_i < ∞")

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        cube = draw_cube(rng, f.n, self.generator.J, self.generator.K)
        local = restrict(f, cube)
        g = holder_attainer(f, cube, self.params)
        bound = cube.volume**self.params.cube_exponent
        paired = closeness(
            pairing(local, g), bound * mixed_norm(local, self.params.pbar)
        )
        if local.is_zero():
            return TrialOutcome(paired)
        normed = closeness(mixed_norm(g, self.params.pbar.conjugate()), bound)
        if not is_block(g, cube, self.params):
            return TrialOutcome(float("inf"), tags=("not_a_block",))
        return TrialOutcome(max(paired, normed))


class DualityChainProbe(BaseProbe):
    """|∫fg| ≤ h_norm_upper(g)·‖f‖_{M^{t,r}_{p̄}}."""

    PROBE_NAME = "duality_chain"
    FAMILY = "duality"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "pairing over the block upper bound times bm_norm"
    DEFAULT_TRIALS = 200

    def check_spec(self) -> None:
        self.params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        f = self.draw(rng, refine)
        g = self.draw(rng, refine)
        upper, _ = h_norm_upper(g, self.params)
        return TrialOutcome(
            ratio_of(abs(pairing(f, g)), upper * bm_norm(f, self.params))
        )


class DualitySandwichProbe(BaseProbe):
    """
    h_norm_lower(g) ≤ h_norm_upper(g), the upper decomposition is valid, and a
    single block has h_norm_upper ≤ 1. The bracket ratio upper/lower is the
    measured gap of single-level decompositions.
    """

    PROBE_NAME = "duality_sandwich"
    FAMILY = "duality"
    KIND = ProbeKind.EXACT
    DESCRIPTION = "lower over upper block-space bound, and the single-block bound"
    DEFAULT_TRIALS = 100
    DEFAULT_OPTIONS = {"budget": "8"}

    def check_spec(self) -> None:
        self.params.require_finite()

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        g = self.draw(rng, refine)
        seed = int(rng.integers(2**32))
        budget = self.spec.option_int("budget", 8)
        lower, witness = h_norm_lower(g, self.params, budget, seed)
        upper, decomposition = h_norm_upper(g, self.params)
        decomposition.validate(g, self.params)
        certified = ratio_of(abs(pairing(witness, g)), bm_norm(witness, self.params))
        sandwich = max(ratio_of(lower, upper), ratio_of(certified, upper))

        cube = draw_cube(rng, g.n, self.generator.J, self.generator.K)
        _, block = block_split(restrict(g, cube), cube, self.params)
        single, _ = h_norm_upper(block, self.params)
        return TrialOutcome(
            max(sandwich, single), metrics={"bracket_ratio": ratio_of(upper, lower)}
        )


class _BlockOperatorProbe(BaseProbe):
    """h_norm_lower(Tg) / h_norm_upper(g) for a model operator T."""

    KIND = ProbeKind.EMPIRICAL
    FAMILY = "duality"
    DEFAULT_TRIALS = 20
    DEFAULT_OPTIONS = {"budget": "4"}

    def check_spec(self) -> None:
        self.params.require_finite()

    @abstractmethod
    def apply(self, g: StepFunction) -> StepFunction:
        """The operator under test."""

    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        g = self.evaluation_grid(self.draw(rng, refine))
        seed = int(rng.integers(2**32))
        output = self.apply(g)
        budget = self.spec.option_int("budget", 4)
        lower, _ = h_norm_lower(output, self.params, budget, seed)
        upper, _ = h_norm_upper(g, self.params)
        tags = ("approx",) if output.approximate else ()
        return TrialOutcome(ratio_of(lower, upper), tags=tags)


class BlockHilbertProbe(_BlockOperatorProbe):
    """
    The Hilbert transform on the block space.

    Hg has logarithmic peaks at the jumps of g, so its center samples are
    taken on a grid fixed three levels below the generator's.
    """

    PROBE_NAME = "block_hilbert"
    DESCRIPTION = "Hilbert transform, block lower bound of Hg over upper bound of g"
    DEFAULT_PARAMS = SpaceParams.of("2", 3, 6)
    DEFAULT_GENERATOR = GeneratorSpec(n=1, J=2, K=2)
    DEFAULT_OPTIONS = {"budget": "4", "oversample": "3"}

    def check_spec(self) -> None:
        super().check_spec()
        SingularKernelModel.hilbert().check_dimension(self.params.n)

    def apply(self, g: StepFunction) -> StepFunction:
        return singular_apply(g, SingularKernelModel.hilbert())


class BlockMaximalProbe(_BlockOperatorProbe):
    """The iterated grid maximal operator on the block space."""

    PROBE_NAME = "block_maximal"
    DESCRIPTION = "grid maximal operator, block lower bound of Mg over upper bound of g"
    DEFAULT_PARAMS = SpaceParams.of("2,2", 3, 6)

    def apply(self, g: StepFunction) -> StepFunction:
        return iterated_maximal_grid(g)


DUALITY_PROBES: list[type[BaseProbe]] = [
    HolderProbe,
    AttainerProbe,
    DualityChainProbe,
    DualitySandwichProbe,
    BlockHilbertProbe,
    BlockMaximalProbe,
]


@dg.asset(group_name="probes")
def duality_probes(suite_settings: SuiteSettings) -> dg.Output[list[dict]]:
    """Run the Hölder, attainer, duality and block operator probes."""
    return family_output("duality", DUALITY_PROBES, suite_settings)
