"""Two species facing a yearly gamble, in one world and in many.

Each year species B accepts an option that wipes it out with probability
``e`` and otherwise multiplies its population by ``g``; species A always
declines and stays put. Under many worlds both outcomes happen on weighted
branches, and B ends up with ``(g*(1-e))**N`` times as many minds as A on
weight average. In a single world B is almost surely extinct.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rationals import as_fraction

__all__ = [
    "Policy",
    "EvolutionConfig",
    "WorldDistribution",
    "OneWorldResult",
    "exact_many_worlds",
    "mind_ratio",
    "one_world_ensemble",
]

_CHUNK_DRAWS = 1 << 22


class Policy(str, enum.Enum):
    DECLINE = "A_risk_averse_decline"
    ACCEPT = "B_risk_tolerant_accept"


@dataclass(frozen=True)
class EvolutionConfig:
    population: int = 1
    years: int = 20
    extinction: Fraction = Fraction(1, 2)
    growth: int = 3
    policy: Policy = Policy.ACCEPT

    def __post_init__(self):
        object.__setattr__(self, "extinction", as_fraction(self.extinction))
        object.__setattr__(self, "policy", Policy(self.policy))
        if self.population < 1:
            raise ValueError("initial population must be positive")
        if self.years < 0:
            raise ValueError("years must be non-negative")
        if not 0 < self.extinction < 1:
            raise ValueError("extinction probability must lie strictly between 0 and 1")
        if self.growth < 1:
            raise ValueError("growth factor must be a positive integer")

    @property
    def survival(self) -> Fraction:
        return 1 - self.extinction

    def to_dict(self):
        return {
            "population": self.population,
            "years": self.years,
            "extinction": self.extinction,
            "growth": self.growth,
            "policy": self.policy.value,
        }


@dataclass(frozen=True)
class WorldDistribution:
    """Final populations with the total branch weight carrying each."""

    outcomes: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        pops = [p for p, _ in self.outcomes]
        if len(set(pops)) != len(pops):
            raise ValueError("population values must be distinct")
        if sum(m for _, m in self.outcomes) != 1:
            raise ValueError("masses must sum to 1")

    def mass(self, population: int) -> Fraction:
        return dict(self.outcomes).get(population, Fraction(0))

    def expectation(self) -> Fraction:
        return sum((p * m for p, m in self.outcomes), Fraction(0))

    def to_dict(self):
        return {"outcomes": [{"population": p, "mass": m} for p, m in self.outcomes]}


def exact_many_worlds(config: EvolutionConfig) -> WorldDistribution:
    if config.policy is Policy.DECLINE or config.years == 0:
        return WorldDistribution(((config.population, Fraction(1)),))
    alive = config.survival**config.years
    return WorldDistribution(
        ((0, 1 - alive), (config.population * config.growth**config.years, alive))
    )


def mind_ratio(config_b: EvolutionConfig, config_a: EvolutionConfig | None = None, years: int | None = None) -> Fraction:
    """Weight-averaged final population of B over that of A.

    ``config_a`` defaults to B's parameters with the declining policy;
    ``years`` overrides both configs' horizon.
    """
    if config_a is None:
        config_a = EvolutionConfig(config_b.population, config_b.years, config_b.extinction, config_b.growth, Policy.DECLINE)
    if config_a.population != config_b.population:
        raise ValueError("mind_ratio compares species with equal initial populations")
    if years is not None:
        config_a = _with_years(config_a, years)
        config_b = _with_years(config_b, years)
    return exact_many_worlds(config_b).expectation() / exact_many_worlds(config_a).expectation()


def _with_years(config: EvolutionConfig, years: int) -> EvolutionConfig:
    return EvolutionConfig(config.population, years, config.extinction, config.growth, config.policy)


@dataclass(frozen=True)
class OneWorldResult:
    trials: int
    extinct: int
    histogram: dict[int, int]
    exact_extinct: Fraction
    seed: int | None

    @property
    def extinct_fraction(self) -> float:
        return self.extinct / self.trials

    @property
    def standard_error(self) -> float:
        f = self.extinct_fraction
        return math.sqrt(f * (1 - f) / self.trials)

    @property
    def exact_sigma(self) -> float:
        """Binomial standard deviation of the fraction under the exact mass."""
        q = float(self.exact_extinct)
        return math.sqrt(q * (1 - q) / self.trials)

    def to_dict(self):
        return {
            "trials": self.trials,
            "seed": self.seed,
            "extinct": self.extinct,
            "extinct_fraction": self.extinct_fraction,
            "standard_error": self.standard_error,
            "exact_extinct": self.exact_extinct,
            "exact_extinct_float": float(self.exact_extinct),
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def one_world_ensemble(config: EvolutionConfig, trials: int, seed: int | None = 0) -> OneWorldResult:
    """Simulate ``trials`` independent single-world histories.

    Each year is an exact rational draw: an integer uniform on
    ``[0, den)`` below ``num`` means extinction. Trials are cut into chunks
    with their own child seeds, so output depends only on seed, trials and
    config.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    exact = exact_many_worlds(config).mass(0)
    if config.policy is Policy.DECLINE or config.years == 0:
        return OneWorldResult(trials, 0, {config.population: trials}, exact, seed)
    num, den = config.extinction.numerator, config.extinction.denominator
    if den >= 1 << 62:
        raise ValueError("extinction denominator too large for integer draws")
    per_chunk = max(1, _CHUNK_DRAWS // config.years)
    n_chunks = -(-trials // per_chunk)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    survivors = 0
    for i, child in enumerate(children):
        size = min(per_chunk, trials - i * per_chunk)
        rng = np.random.Generator(np.random.PCG64(child))
        draws = rng.integers(0, den, size=(size, config.years), dtype=np.int64)
        survivors += int(np.count_nonzero((draws >= num).all(axis=1)))
    extinct = trials - survivors
    histogram = {}
    if extinct:
        histogram[0] = extinct
    if survivors:
        histogram[config.population * config.growth**config.years] = survivors
    return OneWorldResult(trials, extinct, histogram, exact, seed)
