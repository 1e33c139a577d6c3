"""Bounded search for counterexamples to four rationality postulates.

The postulates are named P1a, P2, P3 and P6 after the Greaves-Myrvold
axiomatisation. Their exact statements live elsewhere, so each one is
checked through an explicit proxy:

P1a  transitivity of strict preference: no bets with A > B > C > A.
P2   sure-thing principle: on a fixed set of weighted states, if f
     and g agree off an event E, their ranking must not depend on what that
     common part is.
P3   statewise dominance: if f >= g in every state and f > g in some state
     of positive weight, g must not be strictly preferred.
P6   small-event continuity: if f > g, then for every consequence c some
     small enough cell of f (or of g) can be overwritten with c without
     destroying the strict preference. A violation is a pair and a c for
     which every cell size in the grid breaks it.

Bets are drawn from a finite grid: weights are positive multiples of
``1/denominator`` over at most ``max_outcomes`` states, utilities come from
``utilities``. Search order is fixed, so the first witness found is the
same on every run. Every witness is re-checked with :func:`prefer` before
being returned.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from ..rationals import as_fraction, format_fraction
from .prospect import Entry, Prospect
from .strategies import Preference, Strategy, comparator, prefer, preference_matrix

__all__ = ["Axiom", "SearchGrid", "Witness", "find_violation", "verify_witness", "compositions"]


class Axiom(str, enum.Enum):
    P1A_TRANSITIVITY = "P1a_transitivity"
    P2_SURETHING = "P2_surething"
    P3_DOMINANCE = "P3_dominance"
    P6_CONTINUITY = "P6_continuity"

    @property
    def label(self) -> str:
        return "proxy-" + self.value.split("_")[0]


@dataclass(frozen=True)
class SearchGrid:
    utilities: tuple[Fraction, ...] = tuple(Fraction(u) for u in range(7))
    denominator: int = 6
    max_outcomes: int = 3
    continuity_max_outcomes: int = 2
    epsilons: tuple[Fraction, ...] = (
        Fraction(1, 10),
        Fraction(1, 100),
        Fraction(1, 1000),
        Fraction(1, 10**6),
    )

    def __post_init__(self):
        object.__setattr__(self, "utilities", tuple(sorted({as_fraction(u) for u in self.utilities})))
        object.__setattr__(self, "epsilons", tuple(sorted({as_fraction(e) for e in self.epsilons})))
        if self.max_outcomes > 4:
            raise ValueError("the search space is limited to four outcomes")
        if not self.epsilons or self.epsilons[0] <= 0:
            raise ValueError("epsilons must be positive")

    @classmethod
    def from_dict(cls, data) -> "SearchGrid":
        kwargs = dict(data)
        return cls(**kwargs)

    def to_dict(self):
        return {
            "utilities": [format_fraction(u) for u in self.utilities],
            "denominator": self.denominator,
            "max_outcomes": self.max_outcomes,
            "continuity_max_outcomes": self.continuity_max_outcomes,
            "epsilons": [format_fraction(e) for e in self.epsilons],
        }


@dataclass
class Witness:
    strategy: Strategy
    axiom: Axiom
    prospects: dict[str, Prospect]
    relation: str
    expected: dict[str, str] = field(default_factory=dict)

    @property
    def label(self) -> str:
        return self.axiom.label

    def to_dict(self):
        return {
            "strategy": self.strategy.to_dict(),
            "axiom": self.axiom.value,
            "label": self.label,
            "relation": self.relation,
            "prospects": {k: p.to_dict() for k, p in self.prospects.items()},
            "expected_preferences": dict(self.expected),
        }


def compositions(denominator: int, parts: int) -> Iterator[tuple[Fraction, ...]]:
    """Positive weight vectors with ``parts`` entries, multiples of ``1/denominator``."""
    for cuts in itertools.combinations(range(1, denominator), parts - 1):
        bounds = (0, *cuts, denominator)
        yield tuple(Fraction(b - a, denominator) for a, b in zip(bounds, bounds[1:]))


def _state_prospect(weights, utilities, name=None) -> Prospect:
    return Prospect(tuple(Entry(f"s{i}", w, u) for i, (w, u) in enumerate(zip(weights, utilities))), name)


def _grid_prospects(grid: SearchGrid, max_outcomes: int) -> list[Prospect]:
    """Distinct bets (as distributions) with strictly increasing utilities."""
    out = []
    for k in range(1, max_outcomes + 1):
        for weights in compositions(grid.denominator, k):
            for utils in itertools.combinations(grid.utilities, k):
                out.append(_state_prospect(weights, utils))
    return out


def _pref_name(cmp_value: int) -> str:
    return "A" if cmp_value > 0 else "B" if cmp_value < 0 else "indifferent"


def _search_transitivity(strategy, grid, cmp):
    prospects = _grid_prospects(grid, grid.max_outcomes)
    strict = (preference_matrix(strategy, prospects) > 0).astype(np.int64)
    closing = ((strict @ strict) > 0) & (strict.T > 0)
    hits = np.argwhere(closing)
    if hits.size == 0:
        return None
    i, k = (int(v) for v in hits[0])
    j = int(np.flatnonzero(strict[i] & strict[:, k])[0])
    return Witness(
        strategy,
        Axiom.P1A_TRANSITIVITY,
        {"A": prospects[i], "B": prospects[j], "C": prospects[k]},
        "A > B, B > C and C > A",
        {"A vs B": "A", "B vs C": "B", "C vs A": "C"},
    )


def _state_space(strategy, grid, weights):
    """All utility assignments on one set of states and their sign matrix.

    Vectors are listed in ``itertools.product`` order, so vector ``v`` sits
    at the flat index of ``v``'s utility positions in a ``(u,)*k`` array.
    """
    k = len(weights)
    vectors = list(itertools.product(grid.utilities, repeat=k))
    bets = [_state_prospect(weights, v) for v in vectors]
    return vectors, bets, preference_matrix(strategy, bets)


def _search_dominance(strategy, grid, cmp):
    n_u = len(grid.utilities)
    for k in range(2, grid.max_outcomes + 1):
        idx = np.array(list(itertools.product(range(n_u), repeat=k)), dtype=np.int64)
        geq = np.all(idx[:, None, :] >= idx[None, :, :], axis=2)
        dominates = geq & ~np.all(idx[:, None, :] == idx[None, :, :], axis=2)
        for weights in compositions(grid.denominator, k):
            vectors, bets, signs = _state_space(strategy, grid, weights)
            hits = np.argwhere(dominates & (signs < 0))
            if hits.size:
                f, g = (int(v) for v in hits[0])
                return Witness(
                    strategy,
                    Axiom.P3_DOMINANCE,
                    {"f": bets[f], "g": bets[g]},
                    "f dominates g state by state, yet g is strictly preferred",
                    {"f vs g": "B"},
                )
    return None


def _search_surething(strategy, grid, cmp):
    # a strict reversal (f > g but g2 > f2) is the more telling witness
    return _surething_pass(strategy, grid, strict=True) or _surething_pass(strategy, grid, strict=False)


def _surething_pass(strategy, grid, strict):
    n_u = len(grid.utilities)
    for k in range(2, grid.max_outcomes + 1):
        flat = np.arange(n_u**k).reshape((n_u,) * k)
        for weights in compositions(grid.denominator, k):
            vectors, bets, signs = _state_space(strategy, grid, weights)
            for size in range(1, k):
                for event in itertools.combinations(range(k), size):
                    # rows: utilities on the event, columns: the common part off it
                    table = np.moveaxis(flat, event, tuple(range(size))).reshape(n_u**size, -1)
                    outcome = signs[table[:, None, :], table[None, :, :]]
                    low, high = outcome.min(axis=2), outcome.max(axis=2)
                    flips = np.argwhere((low < 0) & (high > 0) if strict else low != high)
                    if flips.size == 0:
                        continue
                    a, b = (int(v) for v in flips[0])
                    row = outcome[a, b]
                    if strict:
                        h1, h2 = int(np.flatnonzero(row > 0)[0]), int(np.flatnonzero(row < 0)[0])
                    else:
                        h1 = 0
                        h2 = int(np.flatnonzero(row != row[0])[0])
                    f, g = int(table[a, h1]), int(table[b, h1])
                    f2, g2 = int(table[a, h2]), int(table[b, h2])
                    return Witness(
                        strategy,
                        Axiom.P2_SURETHING,
                        {"f": bets[f], "g": bets[g], "f2": bets[f2], "g2": bets[g2]},
                        f"f, g agree off states {[s for s in range(k) if s not in event]}; changing only "
                        "that common part flips the preference between them",
                        {"f vs g": _pref_name(int(row[h1])), "f2 vs g2": _pref_name(int(row[h2]))},
                    )
    return None


def _overwrite(p: Prospect, index: int, eps: Fraction, consequence: Fraction) -> Prospect:
    entries = list(p.entries)
    e = entries[index]
    entries[index] = Entry(e.outcome, e.weight - eps, e.utility, e.good)
    entries.append(Entry(f"{e.outcome}*", eps, consequence))
    return Prospect(tuple(entries), p.name)


def _breaking_cell(p, other, eps, consequence, cmp, modified_first, memo):
    """First cell of size ``eps`` in ``p`` whose overwrite kills the strict preference."""
    for idx, e in enumerate(p.entries):
        if e.weight < eps:
            continue
        key = (id(p), idx, eps, consequence)
        q = memo.get(key)
        if q is None:
            q = memo[key] = _overwrite(p, idx, eps, consequence)
        still = cmp(q, other) > 0 if modified_first else cmp(other, q) > 0
        if not still:
            return q
    return None


def _search_continuity(strategy, grid, cmp):
    prospects = _grid_prospects(grid, grid.continuity_max_outcomes)
    memo: dict = {}
    for a in prospects:
        for b in prospects:
            if a is b or cmp(a, b) <= 0:
                continue
            for consequence in grid.utilities:
                for side in ("f", "g"):
                    broken = {}
                    for eps in grid.epsilons:
                        if side == "f":
                            q = _breaking_cell(a, b, eps, consequence, cmp, True, memo)
                        else:
                            q = _breaking_cell(b, a, eps, consequence, cmp, False, memo)
                        if q is None:
                            break
                        broken[eps] = q
                    else:
                        smallest = grid.epsilons[0]
                        modified = broken[smallest]
                        prospects_out = {"f": a, "g": b}
                        if side == "f":
                            prospects_out["f_eps"] = modified
                            expected = {"f vs g": "A", "f_eps vs g": "not A"}
                        else:
                            prospects_out["g_eps"] = modified
                            expected = {"f vs g": "A", "f vs g_eps": "not A"}
                        return Witness(
                            strategy,
                            Axiom.P6_CONTINUITY,
                            prospects_out,
                            f"f > g, but overwriting a cell of {side} with utility {consequence} "
                            f"breaks the strict preference for every cell size in "
                            f"{[str(e) for e in grid.epsilons]} (shown: {smallest})",
                            expected,
                        )
    return None


_SEARCHES = {
    Axiom.P1A_TRANSITIVITY: _search_transitivity,
    Axiom.P2_SURETHING: _search_surething,
    Axiom.P3_DOMINANCE: _search_dominance,
    Axiom.P6_CONTINUITY: _search_continuity,
}


def find_violation(strategy: Strategy, axiom: Axiom | str, grid: SearchGrid | None = None) -> Witness | None:
    """Search the bounded grid for a violation of ``axiom`` by ``strategy``.

    Returns a re-verified :class:`Witness`, or None when the grid holds no
    counterexample.
    """
    axiom = Axiom(axiom)
    grid = grid or SearchGrid()
    witness = _SEARCHES[axiom](strategy, grid, comparator(strategy))
    if witness is not None and not verify_witness(witness):
        raise AssertionError(f"witness for {axiom.value} failed re-verification")
    return witness


def verify_witness(witness: Witness) -> bool:
    """Re-check a witness by direct :func:`prefer` calls."""
    s, p = witness.strategy, witness.prospects
    strictly = Preference.A
    if witness.axiom is Axiom.P1A_TRANSITIVITY:
        return (
            prefer(s, p["A"], p["B"]) is strictly
            and prefer(s, p["B"], p["C"]) is strictly
            and prefer(s, p["C"], p["A"]) is strictly
        )
    if witness.axiom is Axiom.P3_DOMINANCE:
        f, g = p["f"], p["g"]
        dominated = all(fe.utility >= ge.utility for fe, ge in zip(f.entries, g.entries))
        strict_somewhere = any(fe.utility > ge.utility and fe.weight > 0 for fe, ge in zip(f.entries, g.entries))
        same_states = f.weights == g.weights
        return dominated and strict_somewhere and same_states and prefer(s, f, g) is Preference.B
    if witness.axiom is Axiom.P2_SURETHING:
        f, g, f2, g2 = p["f"], p["g"], p["f2"], p["g2"]
        if not (f.weights == g.weights == f2.weights == g2.weights):
            return False
        differ = [i for i, (a, b) in enumerate(zip(f.utilities, g.utilities)) if a != b]
        differ2 = [i for i, (a, b) in enumerate(zip(f2.utilities, g2.utilities)) if a != b]
        same_event_part = all(f.utilities[i] == f2.utilities[i] and g.utilities[i] == g2.utilities[i] for i in differ)
        return differ == differ2 and same_event_part and prefer(s, f, g) is not prefer(s, f2, g2)
    if witness.axiom is Axiom.P6_CONTINUITY:
        f, g = p["f"], p["g"]
        if prefer(s, f, g) is not strictly:
            return False
        if "f_eps" in p:
            return prefer(s, p["f_eps"], g) is not strictly
        return prefer(s, f, p["g_eps"]) is not strictly
    return False

