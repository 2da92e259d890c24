"""
Integral operators on step functions: the fractional integral I_α, the model
singular integrals (Hilbert transform, truncated Riesz transforms) and the
projected convolution E_J(f * g).

Outputs of I_α and the singular integrals are samples at cell centers. Each
operator is a discrete convolution of the cell values with a kernel table
indexed by the cell offset δ, evaluated with ``scipy.signal.convolve``.
"""

from __future__ import annotations

import itertools
import math
from enum import Enum

import dagster as dg
import numpy as np
import scipy.signal as signal
import scipy.special as special
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mixnorm_lab.grid import StepFunction, align

logger = dg.get_dagster_logger("mixnorm_lab.operators")

# sub-cells per axis for the cells touching the singular one
ADJACENT_SUBDIVISION = 4


class KernelKind(str, Enum):
    """Model Calderón-Zygmund kernels."""

    HILBERT = "hilbert"
    RIESZ = "riesz"


class SingularKernelModel(BaseModel):
    """A model singular kernel: the 1D Hilbert kernel or a truncated Riesz kernel."""

    model_config = ConfigDict(frozen=True)

    kind: KernelKind
    axis: int = Field(default=0, ge=0)
    epsilon: float | None = None

    @model_validator(mode="after")
    def _check_truncation(self) -> SingularKernelModel:
        if self.kind is KernelKind.RIESZ:
            if self.epsilon is None or not self.epsilon > 0:
                raise ValueError("truncated Riesz kernels need a radius ε > 0")
        return self

    @classmethod
    def hilbert(cls) -> SingularKernelModel:
        return cls(kind=KernelKind.HILBERT)

    @classmethod
    def riesz(cls, axis: int, epsilon: float) -> SingularKernelModel:
        return cls(kind=KernelKind.RIESZ, axis=axis, epsilon=epsilon)

    def check_dimension(self, n: int) -> None:
        if self.kind is KernelKind.HILBERT and n != 1:
            raise ValueError(f"the Hilbert kernel acts on the line, not dimension {n}")
        if self.axis >= n:
            raise ValueError(f"Riesz axis {self.axis} outside dimension {n}")


class FracParams(BaseModel):
    """Order α of the fractional integral, 0 < α < n."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0)

    def check_dimension(self, n: int) -> None:
        if not self.alpha < n:
            raise ValueError(f"fractional order α = {self.alpha} must be below n = {n}")


def _offsets(size: int, n: int) -> list[np.ndarray]:
    """Offset grids δ_i ∈ [-(N-1), N-1] per axis, as broadcastable arrays."""
    line = np.arange(-(size - 1), size)
    return list(np.meshgrid(*([line] * n), indexing="ij"))


def _apply_kernel(f: StepFunction, kernel: np.ndarray) -> np.ndarray:
    """out[i] = Σ_c v_c·kernel[i - c] for every cell i of the window."""
    size = f.cells_per_axis
    full = signal.convolve(f.values, kernel, mode="full", method="direct")
    index = tuple(slice(size - 1, 2 * size - 1) for _ in range(f.n))
    return full[index]


def _power_antiderivative(u: np.ndarray, alpha: float) -> np.ndarray:
    """G(u) = sign(u)|u|^α/α, so ∫_a^b |u|^{α-1} du = G(b) - G(a)."""
    return np.sign(u) * np.power(np.abs(u), alpha) / alpha


def fractional_potential_1d(
    f: StepFunction, alpha: float, x: np.ndarray | float
) -> np.ndarray:
    """Exact I_α f(x) = ∫ f(y)|x - y|^{α-1} dy on the line, at arbitrary points."""
    if f.n != 1:
        raise ValueError("the closed-form potential is one-dimensional")
    FracParams(alpha=alpha).check_dimension(1)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    edges = f.cell_edges()
    low = _power_antiderivative(x[:, None] - edges[None, :-1], alpha)
    high = _power_antiderivative(x[:, None] - edges[None, 1:], alpha)
    return (low - high) @ f.values


def riemann_fractional_1d(
    f: StepFunction, alpha: float, x: np.ndarray | float, m: int = 2000
) -> np.ndarray:
    """
    Midpoint Riemann sums of I_α f(x) with m sub-intervals per cell.

    Sub-intervals whose midpoint lies within one cell width of x are
    integrated in closed form; the midpoint rule cannot resolve the
    singularity of |x - y|^{α-1} there.
    """
    if f.n != 1:
        raise ValueError("the Riemann oracle is one-dimensional")
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    step = f.cell_width / m
    nodes = (np.arange(f.cells_per_axis * m) + 0.5) * step
    offset = x[:, None] - nodes[None, :]
    near = np.abs(offset) <= f.cell_width
    with np.errstate(divide="ignore"):
        midpoint = np.power(np.abs(offset), alpha - 1.0) * step
    exact = _power_antiderivative(
        offset + 0.5 * step, alpha
    ) - _power_antiderivative(offset - 0.5 * step, alpha)
    kernel = np.where(near, exact, midpoint)
    return kernel @ np.repeat(f.values, m)


def _unit_ball_radius(h: float, n: int) -> float:
    """Radius of the ball with the volume h^n of one cell."""
    return h * (special.gamma(n / 2 + 1) / math.pi ** (n / 2)) ** (1.0 / n)


def _fractional_kernel(size: int, n: int, h: float, alpha: float) -> np.ndarray:
    deltas = _offsets(size, n)
    if n == 1:
        (delta,) = deltas
        return _power_antiderivative((delta + 0.5) * h, alpha) - _power_antiderivative(
            (delta - 0.5) * h, alpha
        )
    distance = h * np.sqrt(sum(d.astype(np.float64) ** 2 for d in deltas))
    with np.errstate(divide="ignore"):
        kernel = h**n * np.power(distance, alpha - n)
    # cells next to the singular one: midpoint rule on a finer sub-grid
    sub = ADJACENT_SUBDIVISION
    sub_offsets = (np.arange(sub) + 0.5) / sub - 0.5
    centre = size - 1
    for delta in itertools.product((-1, 0, 1), repeat=n):
        if not any(delta):
            continue
        points = np.meshgrid(*[d + sub_offsets for d in delta], indexing="ij")
        radius = h * np.sqrt(sum(p**2 for p in points))
        value = float(np.sum(np.power(radius, alpha - n))) * (h / sub) ** n
        kernel[tuple(centre + d for d in delta)] = value
    # the singular cell itself: the equal-volume ball, ∫_{|u|<ρ}|u|^{α-n} = ωρ^α/α
    surface = 2 * math.pi ** (n / 2) / special.gamma(n / 2)
    rho = _unit_ball_radius(h, n)
    kernel[(centre,) * n] = surface * rho**alpha / alpha
    return kernel


def frac_integral(f: StepFunction, alpha: float) -> StepFunction:
    """
    I_α f(x) = ∫ f(y)|x - y|^{α-n} dy sampled at cell centers.

    Parameters
    ----------
    f : StepFunction
        Input function.
    alpha : float
        Order in (0, n).

    Returns
    -------
    StepFunction
        Center samples; exact on the line, flagged approximate for n ≥ 2
        where midpoint quadrature and the equal-volume ball replace the
        exact cell integrals.
    """
    FracParams(alpha=alpha).check_dimension(f.n)
    kernel = _fractional_kernel(f.cells_per_axis, f.n, f.cell_width, alpha)
    values = _apply_kernel(f, kernel)
    return f.with_values(values, approximate=f.approximate or f.n > 1)


def _snap_edges(f: StepFunction, x: np.ndarray) -> np.ndarray:
    """Move points on window cell edges to the center of the next cell."""
    h = f.cell_width
    inside = (x >= 0) & (x <= math.ldexp(1.0, f.K))
    on_edge = inside & np.isclose(x / h, np.round(x / h), rtol=0, atol=1e-12)
    if np.any(on_edge):
        logger.debug(f"moved {int(on_edge.sum())} edge points to cell centers")
    return np.where(on_edge, np.round(x / h) * h + 0.5 * h, x)


def hilbert_1d(f: StepFunction, x: np.ndarray | float) -> np.ndarray:
    """Hf(x) = (1/π) Σ_c v_c ln(|x - a_c| / |x - b_c|), exact away from edges."""
    if f.n != 1:
        raise ValueError("the Hilbert transform acts on the line")
    x = _snap_edges(f, np.atleast_1d(np.asarray(x, dtype=np.float64)))
    edges = f.cell_edges()
    left = np.log(np.abs(x[:, None] - edges[None, :-1]))
    right = np.log(np.abs(x[:, None] - edges[None, 1:]))
    return (left - right) @ f.values / math.pi


def _hilbert_kernel(size: int) -> np.ndarray:
    # the own cell contributes ln 1 = 0 by symmetry of its center
    delta = np.arange(-(size - 1), size, dtype=np.float64)
    return np.log(np.abs(delta + 0.5) / np.abs(delta - 0.5)) / math.pi


def _riesz_kernel(
    size: int, n: int, h: float, axis: int, epsilon: float
) -> np.ndarray:
    deltas = _offsets(size, n)
    distance = h * np.sqrt(sum(d.astype(np.float64) ** 2 for d in deltas))
    constant = special.gamma((n + 1) / 2) / math.pi ** ((n + 1) / 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = constant * deltas[axis] * h / np.power(distance, n + 1) * h**n
    return np.where(distance > epsilon, kernel, 0.0)


def singular_apply(f: StepFunction, kernel: SingularKernelModel) -> StepFunction:
    """
    Apply a model singular integral, sampled at cell centers.

    The Hilbert transform is exact at the centers; truncated Riesz
    transforms use the midpoint rule outside the ε-ball and are flagged
    approximate.
    """
    kernel.check_dimension(f.n)
    if kernel.kind is KernelKind.HILBERT:
        values = _apply_kernel(f, _hilbert_kernel(f.cells_per_axis))
        return f.with_values(values)
    assert kernel.epsilon is not None
    table = _riesz_kernel(
        f.cells_per_axis, f.n, f.cell_width, kernel.axis, kernel.epsilon
    )
    return f.with_values(_apply_kernel(f, table), approximate=True)


def convolve_project(f: StepFunction, g: StepFunction) -> StepFunction:
    """
    E_J(f * g): exact cell averages of the convolution on the window K + 1.

    χ_{[a,a+h)} * χ_{[b,b+h)} is a tent of height h over [a+b, a+b+2h), with
    average h/2 on each of its two cells; in n dimensions the tents are
    tensor products.
    """
    if f.depth != 0 or g.depth != 0:
        raise ValueError("convolution needs depth 0 functions")
    f, g = align(f, g)
    full = signal.convolve(f.values, g.values, mode="full", method="direct")
    tents = signal.convolve(full, np.ones((2,) * f.n), mode="full", method="direct")
    values = (f.cell_width / 2) ** f.n * tents
    return StepFunction(
        n=f.n,
        J=f.J,
        K=f.K + 1,
        depth=0,
        values=values,
        approximate=f.approximate or g.approximate,
    )
