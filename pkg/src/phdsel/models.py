"""Parametric cell-probability models and the mixture data generator.

A model maps a parameter vector to the probabilities of the partition cells.
Interior cells sum the pmf over the integers they cover; the last cell
absorbs the residual 1 - sum(interior), so the output is normalized exactly
rather than by truncated summation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cells import CellPartition, as_prob_vector, default_partition
from .errors import InvalidInput, InvalidParameter

POISSON_BOUNDS = (1e-6, 50.0)
GEOMETRIC_BOUNDS = (1e-6, 1.0 - 1e-6)


@dataclass(frozen=True)
class DiscreteModel:
    """A named parametric family of cell-probability vectors.

    ``cell_fn`` maps a length-k parameter array to the m cell probabilities
    of ``partition``.  ``bounds`` is the box the optimizer searches.
    """

    name: str
    bounds: tuple[tuple[float, float], ...]
    partition: CellPartition
    cell_fn: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        if self.k >= self.partition.m - 1:
            raise InvalidInput(
                f"parameter dimension {self.k} must be < m-1 = {self.partition.m - 1}"
            )
        for lo, hi in self.bounds:
            if not lo < hi:
                raise InvalidInput("each bound must satisfy lo < hi")

    @property
    def k(self) -> int:
        return len(self.bounds)

    def theta_array(self, theta) -> np.ndarray:
        arr = np.atleast_1d(np.asarray(theta, dtype=float))
        if arr.shape != (self.k,):
            raise InvalidInput(f"theta must have shape ({self.k},), got {arr.shape}")
        return arr

    def cell_prob(self, theta) -> np.ndarray:
        """Cell probabilities at ``theta`` (validated simplex point)."""
        return as_prob_vector(self.cell_fn(self.theta_array(theta)))


def _cell_sums(pmf_fn, part: CellPartition, support_start: int, theta1: float) -> np.ndarray:
    """Sum a pmf over the integers of each interior cell; residual tail."""
    ranges = part.integer_cell_ranges(support_start)
    top = max(b for _, b in ranges)
    xs = np.arange(support_start, top)
    pmf = pmf_fn(xs, theta1)
    csum = np.concatenate(([0.0], np.cumsum(pmf)))
    probs = np.empty(part.m)
    for i, (a, b) in enumerate(ranges):
        probs[i] = csum[b - support_start] - csum[a - support_start]
    probs[-1] = max(1.0 - probs[:-1].sum(), 0.0)
    return probs


def _poisson_pmf(xs: np.ndarray, lam: float) -> np.ndarray:
    # pmf(0) = exp(-lam); pmf(x) = pmf(x-1) * lam / x, evaluated by cumprod
    if xs.size == 0:
        return np.empty(0)
    base = np.exp(-lam)
    ratios = np.cumprod(lam / np.arange(1.0, xs[-1] + 1.0))
    return np.concatenate(([base], base * ratios))[xs]


def _geometric_pmf(xs: np.ndarray, p: float) -> np.ndarray:
    return p * (1.0 - p) ** (xs - 1.0)


def poisson_cell_probs(lam: float, part: CellPartition) -> np.ndarray:
    """Cell probabilities of a Poisson rate-``lam`` pmf on {0, 1, 2, ...}."""
    if not (np.isfinite(lam) and lam > 0.0):
        raise InvalidParameter(f"poisson rate must be > 0, got {lam!r}")
    return as_prob_vector(_cell_sums(_poisson_pmf, part, 0, float(lam)))


def geometric_cell_probs(p: float, part: CellPartition) -> np.ndarray:
    """Cell probabilities of a geometric success-probability-``p`` pmf on
    {1, 2, ...}; the cell [0, 1) carries no mass."""
    if not (np.isfinite(p) and 0.0 < p < 1.0):
        raise InvalidParameter(f"geometric success probability must be in (0,1), got {p!r}")
    return as_prob_vector(_cell_sums(_geometric_pmf, part, 1, float(p)))


def poisson_model(part: CellPartition | None = None,
                  bounds: tuple[float, float] = POISSON_BOUNDS) -> DiscreteModel:
    part = part or default_partition()

    def cell_fn(theta: np.ndarray) -> np.ndarray:
        return poisson_cell_probs(theta[0], part)

    return DiscreteModel(name="poisson", bounds=(bounds,), partition=part, cell_fn=cell_fn)


def geometric_model(part: CellPartition | None = None,
                    bounds: tuple[float, float] = GEOMETRIC_BOUNDS) -> DiscreteModel:
    part = part or default_partition()

    def cell_fn(theta: np.ndarray) -> np.ndarray:
        return geometric_cell_probs(theta[0], part)

    return DiscreteModel(name="geometric", bounds=(bounds,), partition=part, cell_fn=cell_fn)


MODEL_BUILDERS: dict[str, Callable[[CellPartition | None], DiscreteModel]] = {
    "poisson": poisson_model,
    "geometric": geometric_model,
}


def model_by_name(name: str, part: CellPartition | None = None) -> DiscreteModel:
    try:
        builder = MODEL_BUILDERS[name]
    except KeyError:
        raise InvalidInput(
            f"unknown model {name!r}; known models: {sorted(MODEL_BUILDERS)}"
        ) from None
    return builder(part)


@dataclass(frozen=True)
class MixtureDGP:
    """Two-component data generator: Poisson(rate) with weight ``pi``,
    geometric(success) with weight 1 - ``pi``."""

    pi: float
    poisson_rate: float = 4.0
    geometric_p: float = 0.2

    def __post_init__(self):
        if not 0.0 <= self.pi <= 1.0:
            raise InvalidParameter(f"mixing weight must be in [0,1], got {self.pi!r}")
        if self.poisson_rate <= 0.0:
            raise InvalidParameter("poisson rate must be > 0")
        if not 0.0 < self.geometric_p < 1.0:
            raise InvalidParameter("geometric success probability must be in (0,1)")


def sample_mixture(dgp: MixtureDGP, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` independent observations from the mixture.

    Deterministic for a given generator state; each draw comes from the
    Poisson component with probability ``dgp.pi``.
    """
    if n < 1:
        raise InvalidInput("n must be >= 1")
    take_first = rng.random(n) < dgp.pi
    first = rng.poisson(dgp.poisson_rate, n)
    second = rng.geometric(dgp.geometric_p, n)
    return np.where(take_first, first, second)


def mixture_cell_probs(pi: float, part: CellPartition,
                       poisson_rate: float = 4.0,
                       geometric_p: float = 0.2) -> np.ndarray:
    """Exact cell probabilities of the mixture (no sampling)."""
    if not 0.0 <= pi <= 1.0:
        raise InvalidParameter(f"mixing weight must be in [0,1], got {pi!r}")
    mix = (pi * poisson_cell_probs(poisson_rate, part)
           + (1.0 - pi) * geometric_cell_probs(geometric_p, part))
    return as_prob_vector(mix)
