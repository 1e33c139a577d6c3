"""The catalogue of betting strategies as lexicographic ranking keys.

Every strategy except the future self democrat maps a prospect to a tuple
of exact rationals; bigger tuples are better and Python's tuple ordering
gives the lexicographic comparison. Keys are built from the merged
distribution (equal utilities pooled, ascending), which keeps percentile
indexing well defined when utilities repeat.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from ..errors import KeylessStrategy, ProspectError
from ..rationals import as_fraction, format_fraction
from .prospect import Prospect

__all__ = [
    "Kind",
    "WeightMode",
    "Preference",
    "Strategy",
    "RankKey",
    "evaluate_key",
    "prefer",
    "comparator",
    "preference_matrix",
]

RankKey = tuple  # of Fractions, most significant first


class Kind(str, enum.Enum):
    MEAN_UTILITARIAN = "MeanUtilitarian"
    PRICE_RAWLSIAN = "PriceRawlsian"
    FUTURE_SELF_ELITIST = "FutureSelfElitist"
    RIVALROUS_ELITIST = "RivalrousElitist"
    MEDIAN_UTILITARIAN = "MedianUtilitarian"
    X_PERCENTILE = "XPercentile"
    FUTURE_SELF_DEMOCRAT = "FutureSelfDemocrat"
    DISTRIBUTION_ENGINEER = "DistributionEngineer"


class WeightMode(str, enum.Enum):
    SENSITIVE = "weight_sensitive"
    INDIFFERENT = "weight_indifferent"


class Preference(str, enum.Enum):
    A = "A"
    B = "B"
    INDIFFERENT = "indifferent"


def _lookup(table, *args):
    if callable(table):
        return as_fraction(table(*args))
    key = args[0] if len(args) == 1 else tuple(args)
    try:
        return as_fraction(table[key])
    except KeyError:
        shown = ", ".join(format_fraction(a) for a in args)
        raise ProspectError(f"distribution-engineer table has no value at ({shown})") from None


@dataclass(frozen=True)
class Strategy:
    """A ranking rule plus its attitude to branch weights.

    ``x`` is the percentile for ``XPercentile``; ``grid_resolution`` switches
    the democrat from the exact interval electorate to ``M`` equally spaced
    voters; ``f1``/``f2`` are the distribution engineer's functions, given as
    callables or lookup tables keyed by utility (or utility pairs).
    """

    kind: Kind
    weight_mode: WeightMode = WeightMode.SENSITIVE
    x: Fraction | None = None
    grid_resolution: int | None = None
    f1: Callable | Mapping | None = field(default=None, compare=False)
    f2: Callable | Mapping | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "weight_mode", WeightMode(self.weight_mode))
        if self.kind is Kind.X_PERCENTILE:
            if self.x is None:
                raise ValueError("XPercentile needs x")
            x = as_fraction(self.x)
            if not 0 < x < 100:
                raise ValueError("x must lie strictly between 0 and 100")
            object.__setattr__(self, "x", x)
        if self.kind is Kind.DISTRIBUTION_ENGINEER and self.f1 is None and self.f2 is None:
            raise ValueError("a distribution engineer needs f1 and/or f2")
        if self.grid_resolution is not None and self.grid_resolution < 1:
            raise ValueError("grid_resolution must be positive")

    @property
    def name(self) -> str:
        base = self.kind.value
        if self.kind is Kind.X_PERCENTILE:
            base += f"({format_fraction(self.x)})"
        if self.weight_mode is WeightMode.INDIFFERENT:
            base += "[indifferent]"
        return base

    def indifferent(self) -> "Strategy":
        """The weight-indifferent counterpart of this strategy."""
        return Strategy(self.kind, WeightMode.INDIFFERENT, self.x, self.grid_resolution, self.f1, self.f2)

    def effective(self, p: Prospect) -> Prospect:
        return p.uniform() if self.weight_mode is WeightMode.INDIFFERENT else p

    def to_dict(self):
        out = {"kind": self.kind.value, "weight_mode": self.weight_mode.value}
        if self.x is not None:
            out["x"] = format_fraction(self.x)
        if self.grid_resolution is not None:
            out["grid_resolution"] = self.grid_resolution
        for name in ("f1", "f2"):
            table = getattr(self, name)
            if isinstance(table, Mapping):
                out[name] = {
                    (",".join(format_fraction(k) for k in key) if isinstance(key, tuple) else format_fraction(key)): format_fraction(v)
                    for key, v in table.items()
                }
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "Strategy":
        tables = {}
        for name in ("f1", "f2"):
            raw = data.get(name)
            if raw is None:
                continue
            table = {}
            for key, value in raw.items():
                parts = tuple(as_fraction(k) for k in key.split(","))
                table[parts[0] if len(parts) == 1 else parts] = as_fraction(value)
            tables[name] = table
        return cls(
            Kind(data["kind"]),
            WeightMode(data.get("weight_mode", WeightMode.SENSITIVE.value)),
            x=data.get("x"),
            grid_resolution=data.get("grid_resolution"),
            **tables,
        )


def _rawlsian_key(dist):
    key = []
    for utility, weight in dist:
        key.extend((utility, -weight))
    return tuple(key)


def _elitist_tail(dist_desc):
    key = []
    for utility, weight in dist_desc:
        key.extend((utility, weight))
    return key


def _rivalrous_key(dist):
    desc = dist[::-1]
    top = desc[0][0]
    margin = top - desc[1][0] if len(desc) > 1 else Fraction(0)
    tail = _elitist_tail(desc)
    return (top, margin, *tail[1:])


def _engineer_value(strategy: Strategy, p: Prospect) -> Fraction:
    total = Fraction(0)
    if strategy.f1 is not None:
        for e in p.entries:
            total += _lookup(strategy.f1, e.utility) * e.weight
    if strategy.f2 is not None:
        for a in p.entries:
            for b in p.entries:
                total += _lookup(strategy.f2, a.utility, b.utility) * a.weight * b.weight
    return total


def evaluate_key(strategy: Strategy, p: Prospect) -> RankKey:
    """Lexicographic key of ``p`` under ``strategy``; larger is preferred.

    The democrat has no key: it ranks by election, see :mod:`.democrat`.
    """
    p = strategy.effective(p)
    kind = strategy.kind
    if kind is Kind.MEAN_UTILITARIAN:
        return (p.mean(),)
    if kind is Kind.DISTRIBUTION_ENGINEER:
        return (_engineer_value(strategy, p),)
    if kind is Kind.FUTURE_SELF_DEMOCRAT:
        raise KeylessStrategy("the future self democrat decides by election, not by key")
    dist = p.distribution()
    if kind is Kind.PRICE_RAWLSIAN:
        # min utility, then less weight stuck at the min, then the next worst, ...
        return _rawlsian_key(dist)
    if kind is Kind.FUTURE_SELF_ELITIST:
        return tuple(_elitist_tail(dist[::-1]))
    if kind is Kind.RIVALROUS_ELITIST:
        return _rivalrous_key(dist)
    if kind is Kind.MEDIAN_UTILITARIAN:
        return (p.quantile(Fraction(1, 2)), p.mean())
    if kind is Kind.X_PERCENTILE:
        return (p.quantile(strategy.x / 100), p.mean())
    raise ValueError(f"unhandled strategy kind {kind}")


def _compare_keys(ka, kb) -> int:
    return (ka > kb) - (ka < kb)


def comparator(strategy: Strategy) -> Callable[[Prospect, Prospect], int]:
    """Return ``cmp(a, b)`` giving 1 if a is strictly preferred, -1 if b, else 0.

    Keys are memoised per prospect, which matters inside the axiom search.
    """
    if strategy.kind is Kind.FUTURE_SELF_DEMOCRAT:
        from .democrat import pairwise_margin

        def cmp(a, b):
            margin = pairwise_margin(strategy, a, b)
            return (margin > 0) - (margin < 0)

        return cmp

    cache: dict = {}

    def key(p):
        sig = p.entries
        k = cache.get(sig)
        if k is None:
            k = cache[sig] = evaluate_key(strategy, p)
        return k

    return lambda a, b: _compare_keys(key(a), key(b))


def prefer(strategy: Strategy, a: Prospect, b: Prospect) -> Preference:
    """Which of two bets ``strategy`` prefers.

    Key comparison for every kind except the democrat, which holds a
    two-candidate election among its future selves.
    """
    if strategy.kind is Kind.FUTURE_SELF_DEMOCRAT:
        from ..errors import TieError
        from .democrat import elect_stv

        try:
            result = elect_stv([a, b], strategy)
        except TieError:
            return Preference.INDIFFERENT
        return Preference.A if result.winner == 0 else Preference.B
    c = _compare_keys(evaluate_key(strategy, a), evaluate_key(strategy, b))
    return Preference.A if c > 0 else Preference.B if c < 0 else Preference.INDIFFERENT


def preference_matrix(strategy: Strategy, prospects) -> np.ndarray:
    """``S[i, j]`` in {-1, 0, 1}: sign of the preference for bet i over bet j.

    Key strategies are reduced to integer ranks first; the democrat uses the
    pairwise vote margins.
    """
    if strategy.kind is Kind.FUTURE_SELF_DEMOCRAT:
        from .democrat import margin_sign_matrix

        return margin_sign_matrix(strategy, prospects)
    keys = [evaluate_key(strategy, p) for p in prospects]
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    ranks = np.array([order[k] for k in keys], dtype=np.int64)
    return np.sign(ranks[:, None] - ranks[None, :]).astype(np.int8)
