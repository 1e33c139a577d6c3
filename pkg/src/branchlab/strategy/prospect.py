"""Bets as finite weighted lists of (outcome, weight, utility) entries."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import ProspectError
from ..rationals import as_fraction, format_fraction

__all__ = ["Entry", "Prospect", "prospect"]


@dataclass(frozen=True)
class Entry:
    outcome: str
    weight: Fraction
    utility: Fraction
    good: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "outcome", str(self.outcome))
        object.__setattr__(self, "weight", as_fraction(self.weight))
        object.__setattr__(self, "utility", as_fraction(self.utility))


@dataclass(frozen=True)
class Prospect:
    """A bet: successors on outcome ``i`` receive a good worth ``utility``.

    Weights must be non-negative and add up to exactly one.
    """

    entries: tuple[Entry, ...]
    name: str | None = None

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ProspectError("a prospect needs at least one entry")
        if any(e.weight < 0 for e in entries):
            raise ProspectError("negative weight in prospect")
        total = sum(e.weight for e in entries)
        if total != 1:
            raise ProspectError(f"prospect weights sum to {format_fraction(total)}, not 1")

    def __len__(self):
        return len(self.entries)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(e.weight for e in self.entries)

    @property
    def utilities(self) -> tuple[Fraction, ...]:
        return tuple(e.utility for e in self.entries)

    @cached_property
    def _merged(self) -> tuple[tuple[Fraction, Fraction], ...]:
        merged: dict[Fraction, Fraction] = {}
        for e in self.entries:
            merged[e.utility] = merged.get(e.utility, Fraction(0)) + e.weight
        return tuple(sorted(merged.items()))

    def distribution(self) -> list[tuple[Fraction, Fraction]]:
        """Distinct utilities ascending, each with its merged weight."""
        return list(self._merged)

    def uniform(self) -> "Prospect":
        """Same entries with every weight replaced by ``1/len``."""
        w = Fraction(1, len(self.entries))
        return Prospect(tuple(Entry(e.outcome, w, e.utility, e.good) for e in self.entries), self.name)

    def mean(self) -> Fraction:
        return sum(e.weight * e.utility for e in self.entries)

    def quantile(self, level: Fraction) -> Fraction:
        """Utility of the first distinct value whose cumulative weight reaches ``level``."""
        cumulative = Fraction(0)
        dist = self._merged
        for utility, weight in dist:
            cumulative += weight
            if cumulative >= level and weight > 0:
                return utility
        return dist[-1][0]

    def to_dict(self):
        out = {
            "entries": [
                {
                    "outcome": e.outcome,
                    "weight": format_fraction(e.weight),
                    "utility": format_fraction(e.utility),
                    **({"good": e.good} if e.good is not None else {}),
                }
                for e in self.entries
            ]
        }
        if self.name is not None:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "Prospect":
        if isinstance(data, Mapping):
            raw, name = data["entries"], data.get("name")
        else:
            raw, name = data, None
        entries = []
        for i, item in enumerate(raw):
            if isinstance(item, Mapping):
                entries.append(Entry(item.get("outcome", i), item["weight"], item["utility"], item.get("good")))
            else:
                entries.append(Entry(i, item[0], item[1]))
        return cls(tuple(entries), name)


def prospect(pairs: Iterable, name: str | None = None) -> Prospect:
    """Shorthand: ``prospect([(w, u), ...])`` with outcomes numbered from 0.

    Weights and utilities may be ints, Fractions or "a/b" strings.
    """
    return Prospect(tuple(Entry(i, w, u) for i, (w, u) in enumerate(pairs)), name)
