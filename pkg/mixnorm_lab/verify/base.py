"""
Base probe class with the shared trial loop.

A probe draws seeded random inputs, evaluates the ratio of the two sides of
one inequality per trial and reports the largest ratio with its witness.
Concrete probes only implement ``trial``; the loop, the pass/fail rule, the
refinement rerun of empirical probes and the logging live here.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import dagster as dg
import numpy as np

from mixnorm_lab.grid import StepFunction
from mixnorm_lab.models import (
    ExponentVector,
    GeneratorSpec,
    ProbeKind,
    ProbeReport,
    ProbeSpec,
    SignMode,
    SpaceParams,
    parse_extended,
)

from .random import draw_step, make_generator

GENERATOR_KEYS = ("n", "J", "K", "sparsity", "low", "high", "sign")
SPACE_KEYS = ("pbar", "t", "r")

# error notes kept per report
MAX_ERROR_NOTES = 3


@dataclass(frozen=True)
class TrialOutcome:
    """Ratio of one trial plus optional tags and measured quantities."""

    ratio: float
    tags: tuple[str, ...] = ()
    metrics: dict[str, float] = field(default_factory=dict)


def ratio_of(lhs: float, rhs: float) -> float:
    """lhs / rhs with 0/0 = 0 and x/0 = ∞."""
    if rhs == 0:
        return 0.0 if lhs == 0 else math.inf
    return lhs / rhs


def max_ratio_of(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """The largest entrywise ratio_of(lhs, rhs), 0 for empty arrays."""
    lhs = np.asarray(lhs, dtype=np.float64).ravel()
    rhs = np.asarray(rhs, dtype=np.float64).ravel()
    if lhs.size == 0:
        return 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(rhs > 0, lhs / rhs, np.where(lhs > 0, np.inf, 0.0))
    return float(ratios.max())


def closeness(value: float, expected: float, scale: float | None = None) -> float:
    """1 + |value - expected| / scale, the ratio form of an equality check."""
    scale = max(abs(value), abs(expected)) if scale is None else scale
    if scale == 0:
        return 1.0
    return 1.0 + abs(value - expected) / scale


class BaseProbe(ABC):
    """
    Abstract base class for inequality probes.

    Each probe must define:
    - PROBE_NAME: registry name
    - FAMILY: the probe family (one Dagster asset per family)
    - KIND: exact probes pass when max_ratio ≤ 1 + TOLERANCE, empirical ones
      when max_ratio is finite and moves by at most REFINEMENT_TOLERANCE
      when the inputs are lifted to resolution J + 1
    - DEFAULT_PARAMS and DEFAULT_GENERATOR
    """

    PROBE_NAME: str = ""
    FAMILY: str = ""
    KIND: ProbeKind = ProbeKind.EXACT
    DESCRIPTION: str = ""

    TOLERANCE = 1e-10
    REFINEMENT_TOLERANCE = 0.10
    DEFAULT_TRIALS = 100
    DEFAULT_PARAMS = SpaceParams.of("2,4", 4, 8)
    DEFAULT_GENERATOR = GeneratorSpec()
    DEFAULT_OPTIONS: dict[str, str] = {}

    def __init__(self, spec: ProbeSpec, max_workers: int = 1):
        if spec.name != self.PROBE_NAME:
            raise ValueError(
                f"spec for {spec.name} given to the {self.PROBE_NAME} probe"
            )
        if spec.generator.n != spec.params.n:
            raise ValueError(
                f"generator dimension {spec.generator.n} does not match "
                f"parameters of dimension {spec.params.n}"
            )
        self.spec = spec
        self.max_workers = max(1, max_workers)
        self.logger = dg.get_dagster_logger(f"mixnorm_lab.{self.PROBE_NAME}_probe")
        self.check_spec()

    # ------------------------------------------------------------------ #
    # spec construction

    @classmethod
    def build_spec(
        cls,
        seed: int = 20240601,
        trials: int | None = None,
        overrides: dict[str, str] | None = None,
    ) -> ProbeSpec:
        """
        Build a spec from the probe defaults and ``key=value`` overrides.

        Generator keys (n, J, K, sparsity, low, high, sign) and space keys
        (pbar, t, r) replace the defaults; ``trials`` and ``seed`` override
        the arguments; every other key is kept as a probe option.
        """
        overrides = dict(overrides or {})
        try:
            if "trials" in overrides:
                trials = int(overrides.pop("trials"))
            if "seed" in overrides:
                seed = int(overrides.pop("seed"))
        except ValueError as e:
            raise ValueError(
                f"{cls.PROBE_NAME}: trials and seed must be integers"
            ) from e

        params = cls.DEFAULT_PARAMS
        if "pbar" in overrides:
            params = params.with_pbar(ExponentVector.parse(overrides.pop("pbar")))
        if "t" in overrides:
            params = params.with_t(parse_extended(overrides.pop("t")))
        if "r" in overrides:
            params = params.with_r(parse_extended(overrides.pop("r")))

        generator = cls.DEFAULT_GENERATOR.model_dump()
        generator["n"] = params.n
        for key in GENERATOR_KEYS:
            if key not in overrides:
                continue
            value = overrides.pop(key)
            if key in ("n", "J", "K"):
                generator[key] = int(value)
            elif key == "sign":
                generator[key] = SignMode(value)
            else:
                generator[key] = float(value)

        options = {**cls.DEFAULT_OPTIONS, **overrides}
        return ProbeSpec(
            name=cls.PROBE_NAME,
            trials=trials if trials is not None else cls.DEFAULT_TRIALS,
            seed=seed,
            generator=GeneratorSpec(**generator),
            params=params,
            options=options,
        )

    # ------------------------------------------------------------------ #
    # hooks

    def check_spec(self) -> None:
        """Reject specs the probe cannot run; the default accepts everything."""

    @abstractmethod
    def trial(self, rng: np.random.Generator, refine: int) -> TrialOutcome:
        """
        Evaluate one trial.

        Parameters
        ----------
        rng : np.random.Generator
            The trial's own generator; draws must not depend on ``refine``.
        refine : int
            Extra resolution levels the random inputs are lifted to.

        Returns
        -------
        TrialOutcome
            The LHS/RHS ratio of the trial.
        """
        pass

    # ------------------------------------------------------------------ #
    # helpers for subclasses

    @property
    def params(self) -> SpaceParams:
        return self.spec.params

    @property
    def generator(self) -> GeneratorSpec:
        return self.spec.generator

    def draw(
        self, rng: np.random.Generator, refine: int = 0, n: int | None = None
    ) -> StepFunction:
        """A random input lifted to resolution J + refine."""
        f = draw_step(rng, self.generator, n)
        return f.with_resolution(f.J + refine)

    def evaluation_grid(self, f: StepFunction) -> StepFunction:
        """
        f re-represented at level J + ``oversample`` of the generator.

        Operators sampled at cell centers then see one fixed grid, whatever
        resolution at or below that level the input arrived in.
        """
        level = self.generator.J + self.spec.option_int("oversample", 0)
        return f if f.J >= level else f.with_resolution(level)

    def params_label(self) -> str:
        label = self.params.label()
        if self.spec.options:
            extras = ";".join(f"{k}={v}" for k, v in sorted(self.spec.options.items()))
            label = f"{label};{extras}"
        return label

    # ------------------------------------------------------------------ #
    # trial loop

    def _run_trial(self, index: int, refine: int) -> TrialOutcome:
        try:
            return self.trial(make_generator(self.spec.seed, index), refine)
        except Exception as e:
            self.logger.warning(f"✗ {self.PROBE_NAME} trial {index} raised: {e}")
            return TrialOutcome(
                ratio=math.nan, tags=(f"error@{index}:{type(e).__name__}: {e}",)
            )

    def run_trials(self, refine: int = 0) -> list[TrialOutcome]:
        """All trials at one resolution, in trial order."""
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            return list(
                executor.map(
                    lambda i: self._run_trial(i, refine), range(self.spec.trials)
                )
            )

    @staticmethod
    def _max_ratio(outcomes: list[TrialOutcome]) -> tuple[float, int]:
        """Largest non-NaN ratio and its first trial index."""
        best, witness = math.nan, 0
        for index, outcome in enumerate(outcomes):
            if math.isnan(outcome.ratio):
                continue
            if math.isnan(best) or outcome.ratio > best:
                best, witness = outcome.ratio, index
        return best, witness

    def _collect_notes(self, outcomes: list[TrialOutcome]) -> list[str]:
        notes = [f"regime={self.params.regime.value}"]
        errors = [t for o in outcomes for t in o.tags if t.startswith("error@")]
        tags: list[str] = []
        for outcome in outcomes:
            for tag in outcome.tags:
                if not tag.startswith("error@") and tag not in tags:
                    tags.append(tag)
        notes.extend(tags)
        metrics: dict[str, float] = {}
        for outcome in outcomes:
            for key, value in outcome.metrics.items():
                if key not in metrics or value > metrics[key]:
                    metrics[key] = value
        notes.extend(f"{key}={value:.6g}" for key, value in sorted(metrics.items()))
        if errors:
            notes.append(f"errors={len(errors)}")
            notes.extend(errors[:MAX_ERROR_NOTES])
        return notes

    def run(self) -> ProbeReport:
        """Run every trial and assemble the report."""
        self.logger.info(
            f"Running {self.PROBE_NAME} ({self.KIND.value}): "
            f"{self.spec.trials} trials, seed {self.spec.seed}, {self.params_label()}"
        )
        outcomes = self.run_trials()
        max_ratio, witness = self._max_ratio(outcomes)
        notes = self._collect_notes(outcomes)
        failed = sum(math.isnan(o.ratio) for o in outcomes)

        if self.KIND is ProbeKind.EXACT:
            violations = [
                i for i, o in enumerate(outcomes) if o.ratio > 1.0 + self.TOLERANCE
            ]
            for index in violations[:MAX_ERROR_NOTES]:
                self.logger.warning(
                    f"✗ {self.PROBE_NAME} trial {index}: "
                    f"ratio {outcomes[index].ratio!r}"
                )
            passed = failed == 0 and not violations
        else:
            refined = self.run_trials(refine=1)
            refined_ratio, _ = self._max_ratio(refined)
            failed += sum(math.isnan(o.ratio) for o in refined)
            notes.append(f"refined_max_ratio={refined_ratio!r}")
            stable = (
                math.isfinite(max_ratio)
                and math.isfinite(refined_ratio)
                and abs(refined_ratio - max_ratio)
                <= self.REFINEMENT_TOLERANCE * max(abs(max_ratio), 1e-300)
            )
            if not stable:
                self.logger.warning(
                    f"✗ {self.PROBE_NAME}: max_ratio {max_ratio!r} moved to "
                    f"{refined_ratio!r} under refinement"
                )
            passed = failed == 0 and stable

        marker = "✓" if passed else "✗"
        self.logger.info(
            f"{marker} {self.PROBE_NAME}: max_ratio={max_ratio!r} "
            f"(witness {self.spec.seed}:{witness})"
        )
        return ProbeReport(
            name=self.PROBE_NAME,
            kind=self.KIND,
            params=self.params_label(),
            trials=self.spec.trials,
            max_ratio=max_ratio,
            witness_seed=self.spec.seed,
            witness_index=witness,
            passed=passed,
            notes=tuple(notes),
        )

