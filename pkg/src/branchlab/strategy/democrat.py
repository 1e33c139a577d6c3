"""Future self democrat: a single transferable vote among percentile voters.

Voter ``x`` in ``[0, 1)`` is the future self ranked at that percentile.
Being purely self-concerned, it ranks the candidate bets by the utility it
would itself receive, i.e. by each bet's quantile function at ``x``.
Quantile functions are step functions, so the electorate splits into
finitely many intervals with constant ballots; their lengths are exact
rational vote masses. A grid electorate of ``M`` equally weighted voters at
cell midpoints is available for cross-checking.

Ballots may contain ties (two bets giving the same utility); a tied tier
shares the ballot's mass equally among its continuing members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import TieError
from .prospect import Prospect

__all__ = [
    "Ballot",
    "STVResult",
    "interval_electorate",
    "grid_electorate",
    "elect_stv",
    "run_stv",
    "pairwise_margin",
    "margin_sign_matrix",
]


@dataclass(frozen=True)
class Ballot:
    """A block of voters with one shared ranking.

    ``tiers`` lists candidate indices best first; candidates inside a tier
    are tied.
    """

    mass: Fraction
    tiers: tuple[tuple[int, ...], ...]
    lo: Fraction | None = None
    hi: Fraction | None = None


@dataclass
class STVResult:
    winner: int
    rounds: list[dict[int, Fraction]] = field(default_factory=list)
    eliminated: list[int] = field(default_factory=list)
    names: list[str | None] = field(default_factory=list)

    @property
    def final_tally(self) -> Fraction:
        return self.rounds[-1][self.winner]

    def to_dict(self):
        return {
            "winner": self.winner,
            "winner_name": self.names[self.winner] if self.names else None,
            "eliminated": list(self.eliminated),
            "rounds": [{str(k): v for k, v in r.items()} for r in self.rounds],
        }


def _tiers(utilities: Sequence[Fraction]) -> tuple[tuple[int, ...], ...]:
    groups: dict[Fraction, list[int]] = {}
    for idx, u in enumerate(utilities):
        groups.setdefault(u, []).append(idx)
    return tuple(tuple(groups[u]) for u in sorted(groups, reverse=True))


def _breakpoints(prospects: Sequence[Prospect]) -> list[Fraction]:
    points = {Fraction(0), Fraction(1)}
    for p in prospects:
        cumulative = Fraction(0)
        for _, w in p.distribution():
            cumulative += w
            points.add(cumulative)
    return sorted(points)


def interval_electorate(prospects: Sequence[Prospect]) -> list[Ballot]:
    """Exact electorate: one ballot per constant-ranking percentile interval."""
    points = _breakpoints(prospects)
    ballots = []
    for lo, hi in zip(points, points[1:]):
        if hi == lo:
            continue
        mid = (lo + hi) / 2
        tiers = _tiers([p.quantile(mid) for p in prospects])
        if ballots and ballots[-1].tiers == tiers:
            prev = ballots[-1]
            ballots[-1] = Ballot(prev.mass + (hi - lo), tiers, prev.lo, hi)
        else:
            ballots.append(Ballot(hi - lo, tiers, lo, hi))
    return ballots


def grid_electorate(prospects: Sequence[Prospect], resolution: int) -> list[Ballot]:
    """``resolution`` voters at cell midpoints, each of mass ``1/resolution``.

    Neighbouring voters with the same ranking are pooled into one ballot;
    ``lo`` and ``hi`` are then the first and last voter positions.
    """
    columns = [_grid_quantiles(p, resolution) for p in prospects]
    mass = Fraction(1, resolution)
    ballots: list[Ballot] = []
    for m in range(resolution):
        x = Fraction(2 * m + 1, 2 * resolution)
        tiers = _tiers([col[m] for col in columns])
        if ballots and ballots[-1].tiers == tiers:
            prev = ballots[-1]
            ballots[-1] = Ballot(prev.mass + mass, tiers, prev.lo, x)
        else:
            ballots.append(Ballot(mass, tiers, x, x))
    return ballots


def _grid_quantiles(p: Prospect, resolution: int) -> list[Fraction]:
    """Quantile at every voter position (2m+1)/(2M), by one pointer walk."""
    dist = [(u, w) for u, w in p.distribution() if w > 0]
    out = []
    i, cum = 0, dist[0][1]
    for m in range(resolution):
        # cum >= (2m+1) / (2M), in integers
        while cum.numerator * 2 * resolution < (2 * m + 1) * cum.denominator and i + 1 < len(dist):
            i += 1
            cum += dist[i][1]
        out.append(dist[i][0])
    return out


def _tally(ballots, continuing):
    tallies = {c: Fraction(0) for c in continuing}
    for ballot in ballots:
        for tier in ballot.tiers:
            live = [c for c in tier if c in continuing]
            if live:
                share = ballot.mass / len(live)
                for c in live:
                    tallies[c] += share
                break
    return tallies


def run_stv(ballots: Sequence[Ballot], n_candidates: int, names=None) -> STVResult:
    """Single-winner transferable vote on pre-built ballots.

    Each round the lowest tally is eliminated (lowest index on ties) until
    someone holds a strict majority. If every continuing candidate has the
    same tally and none has a majority, :class:`TieError` carries the tied set.
    """
    continuing = set(range(n_candidates))
    result = STVResult(winner=-1, names=list(names) if names else [])
    total = sum(b.mass for b in ballots)
    while True:
        tallies = _tally(ballots, continuing)
        result.rounds.append(dict(sorted(tallies.items())))
        best = max(tallies.values())
        if best * 2 > total:
            result.winner = min(c for c, t in tallies.items() if t == best)
            return result
        if len(set(tallies.values())) == 1:
            raise TieError(sorted(continuing))
        worst = min(tallies.values())
        loser = min(c for c, t in tallies.items() if t == worst)
        continuing.discard(loser)
        result.eliminated.append(loser)


def elect_stv(prospects: Sequence[Prospect], democrat=None) -> STVResult:
    """Elect the democrat's preferred bet among ``prospects``.

    ``democrat`` is a :class:`~branchlab.strategy.strategies.Strategy` of kind
    FutureSelfDemocrat (or None for the weight-sensitive, exact default).
    Its ``grid_resolution`` selects the grid electorate; weight-indifferent
    democrats count every entry equally.
    """
    if len(prospects) < 2:
        raise ValueError("an election needs at least two prospects")
    resolution = None
    if democrat is not None:
        prospects = [democrat.effective(p) for p in prospects]
        resolution = democrat.grid_resolution
    if resolution is None:
        ballots = interval_electorate(prospects)
    else:
        ballots = grid_electorate(prospects, resolution)
    return run_stv(ballots, len(prospects), [p.name for p in prospects])


def pairwise_margin(democrat, a: Prospect, b: Prospect) -> Fraction:
    """Vote mass preferring ``a`` minus mass preferring ``b``.

    With two candidates the transferable vote reduces to this majority, so
    it decides the same way as :func:`elect_stv` at a fraction of the cost.
    """
    if democrat is not None:
        a, b = democrat.effective(a), democrat.effective(b)
        if democrat.grid_resolution is not None:
            margin = Fraction(0)
            for ballot in grid_electorate([a, b], democrat.grid_resolution):
                if len(ballot.tiers) == 2:
                    margin += ballot.mass if ballot.tiers[0] == (0,) else -ballot.mass
            return margin
    return _sweep_margin(a.distribution(), b.distribution())


def _sweep_margin(da, db) -> Fraction:
    """Walk both cumulative distributions at once, in integer units of 1/L."""
    scale = math.lcm(*(w.denominator for _, w in da), *(w.denominator for _, w in db))
    da = [(u, w.numerator * (scale // w.denominator)) for u, w in da if w > 0]
    db = [(u, w.numerator * (scale // w.denominator)) for u, w in db if w > 0]
    i = j = 0
    left_a, left_b = da[0][1], db[0][1]
    margin = 0
    while i < len(da) and j < len(db):
        step = min(left_a, left_b)
        ua, ub = da[i][0], db[j][0]
        if ua > ub:
            margin += step
        elif ub > ua:
            margin -= step
        left_a -= step
        left_b -= step
        if left_a == 0:
            i += 1
            if i < len(da):
                left_a = da[i][1]
        if left_b == 0:
            j += 1
            if j < len(db):
                left_b = db[j][1]
    return Fraction(margin, scale)


def margin_sign_matrix(democrat, prospects: Sequence[Prospect], max_cells: int = 10_000):
    """``S[i, j]`` = sign of the two-candidate vote margin of bet i over bet j.

    When every cumulative weight is a multiple of ``1/L`` with ``L`` at most
    ``max_cells``, the electorate is cut into ``L`` equal cells on which all
    quantile functions are constant, and the whole matrix comes from one
    numpy comparison. Otherwise falls back to :func:`pairwise_margin`.
    """
    if democrat is not None:
        prospects = [democrat.effective(p) for p in prospects]
        resolution = democrat.grid_resolution
    else:
        resolution = None
    n = len(prospects)
    if resolution is None:
        dens = {w.denominator for p in prospects for w in _cumulative(p)}
        cells = math.lcm(*dens) if dens else 1
    else:
        cells = resolution
    if cells > max_cells:
        out = np.zeros((n, n), dtype=np.int8)
        for i in range(n):
            for j in range(i + 1, n):
                m = pairwise_margin(None, prospects[i], prospects[j])
                out[i, j] = (m > 0) - (m < 0)
                out[j, i] = -out[i, j]
        return out
    levels = [Fraction(2 * m + 1, 2 * cells) for m in range(cells)]
    values = sorted({u for p in prospects for u in p.utilities})
    rank = {u: r for r, u in enumerate(values)}
    profile = np.array([[rank[p.quantile(x)] for x in levels] for p in prospects], dtype=np.int64)
    margins = np.zeros((n, n), dtype=np.int64)
    for c in range(cells):
        col = profile[:, c]
        margins += np.sign(col[:, None] - col[None, :])
    return np.sign(margins).astype(np.int8)


def _cumulative(p: Prospect):
    total = Fraction(0)
    for _, w in p.distribution():
        total += w
        yield total
