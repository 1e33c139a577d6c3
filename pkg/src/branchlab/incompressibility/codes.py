"""Deterministic stand-ins for probabilistic theories.

A probabilistic model over finitely many independent events is replaced by
a surjective code from ``r``-bit input strings onto the joint outcomes,
allocating roughly ``2**r * p`` inputs to an outcome of probability ``p``.
Codes are stored as per-outcome allocation counts; input ``b`` maps to the
outcome whose cumulative block contains it.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import IndexRange, SpecError, TooShort
from ..rationals import as_fraction

__all__ = ["OutcomeModel", "Code", "build_code"]


@dataclass(frozen=True)
class OutcomeModel:
    """Independent events; ``events[i][j]`` is the probability of outcome j of event i."""

    events: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        events = tuple(tuple(as_fraction(p) for p in ev) for ev in self.events)
        if not events:
            raise SpecError("an outcome model needs at least one event")
        for ev in events:
            if not ev or any(p <= 0 for p in ev):
                raise SpecError("every outcome must have positive probability")
            if sum(ev) != 1:
                raise SpecError("outcome probabilities of an event must sum to 1")
        object.__setattr__(self, "events", events)

    @classmethod
    def single(cls, probabilities: Sequence) -> "OutcomeModel":
        return cls((tuple(probabilities),))

    @property
    def size(self) -> int:
        n = 1
        for ev in self.events:
            n *= len(ev)
        return n

    def outcomes(self) -> list[tuple[int, ...]]:
        """Joint outcomes in lexicographic order of per-event indices."""
        return list(itertools.product(*(range(len(ev)) for ev in self.events)))

    def probabilities(self) -> list[Fraction]:
        out = []
        for combo in self.outcomes():
            p = Fraction(1)
            for ev, j in zip(self.events, combo):
                p *= ev[j]
            out.append(p)
        return out


@dataclass(frozen=True)
class Code:
    r: int
    counts: tuple[int, ...]
    outcomes: tuple[tuple[int, ...], ...]
    max_error: Fraction

    @property
    def surjective(self) -> bool:
        return all(c > 0 for c in self.counts)

    def decode(self, b: int) -> tuple[int, ...]:
        """Joint outcome assigned to the ``r``-bit input ``b``."""
        if not 0 <= b < 1 << self.r:
            raise IndexRange(f"input {b} does not fit in {self.r} bits")
        edges = list(itertools.accumulate(self.counts))
        return self.outcomes[bisect.bisect_right(edges, b)]

    def frequencies(self) -> list[Fraction]:
        return [Fraction(c, 1 << self.r) for c in self.counts]


def _largest_remainder(probs: Sequence[Fraction], total: int) -> list[int]:
    quotas = [p * total for p in probs]
    counts = [q.numerator // q.denominator for q in quotas]
    left = total - sum(counts)
    # biggest fractional part first, lower index on ties
    order = sorted(range(len(probs)), key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in order[:left]:
        counts[i] += 1
    return counts


def build_code(model: OutcomeModel, r: int, *, subcode: bool = False) -> Code:
    """Apportion the ``2**r`` inputs among the joint outcomes.

    Largest-remainder apportionment; unless ``subcode`` is set, every
    outcome then gets at least one input, taken from the most
    over-allocated outcomes.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    probs = model.probabilities()
    total = 1 << r
    n = len(probs)
    if not subcode and total < n:
        raise TooShort(f"2^{r} inputs cannot cover {n} outcomes")
    counts = _largest_remainder(probs, total)
    if not subcode:
        for i in range(n):
            if counts[i] == 0:
                donor = max(
                    (j for j in range(n) if counts[j] > 1),
                    key=lambda j: (counts[j] - probs[j] * total, -j),
                )
                counts[donor] -= 1
                counts[i] = 1
    error = max(abs(Fraction(c, total) - p) for c, p in zip(counts, probs))
    return Code(r, tuple(counts), tuple(model.outcomes()), error)
