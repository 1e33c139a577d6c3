"""Pay-for-risk offers judged by an x-percentile utilitarian.

Standing in a radiation field pays ``pay_per_step`` per step with a lethal
risk per step. The percentile utilitarian commits to a decision for ``g``
steps at a time; how long the commitment lasts changes the answer, since
the death mass ``1 - (1-p)^g`` grows with ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..rationals import as_fraction
from .prospect import Entry, Prospect
from .strategies import Kind, Preference, Strategy, prefer

__all__ = ["EpochDecision", "timescale_decision", "epoch_prospects", "DEFAULT_DEATH_UTILITY"]

DEFAULT_DEATH_UTILITY = Fraction(-10**6)


@dataclass(frozen=True)
class EpochDecision:
    epoch: int
    survival_mass: Fraction
    decision: str  # "accept" or "decline"


def epoch_prospects(pay_per_step, lethality, granularity, banked=0, death_utility=DEFAULT_DEATH_UTILITY):
    """Accept/decline bets for one commitment period.

    Survivors bank ``granularity * pay_per_step`` on top of ``banked``; the
    dead get ``death_utility``; declining keeps ``banked`` for sure.
    """
    pay, p = as_fraction(pay_per_step), as_fraction(lethality)
    banked, death = as_fraction(banked), as_fraction(death_utility)
    survive = (1 - p) ** granularity
    entries = [Entry("survive", survive, banked + pay * granularity)]
    if survive < 1:
        entries.append(Entry("die", 1 - survive, death))
    accept = Prospect(tuple(entries), "accept")
    decline = Prospect((Entry("stay_out", 1, banked),), "decline")
    return accept, decline, survive


def timescale_decision(
    x,
    pay_per_step,
    lethality,
    horizon: int,
    granularity: int,
    death_utility=DEFAULT_DEATH_UTILITY,
) -> list[EpochDecision]:
    """Decision of an ``x``-percentile utilitarian for each commitment epoch.

    Epochs are evaluated from the viewpoint of a surviving self who has
    accepted every earlier epoch; pay already banked is common to both
    options. Requires ``0 <= lethality < 1`` and ``granularity`` dividing
    ``horizon``.
    """
    p = as_fraction(lethality)
    if not 0 <= p < 1:
        raise ValueError("lethality must lie in [0, 1)")
    if granularity < 1 or horizon % granularity:
        raise ValueError("granularity must be a positive divisor of the horizon")
    if as_fraction(death_utility) >= 0:
        raise ValueError("death must be worth less than staying out")
    strategy = Strategy(Kind.X_PERCENTILE, x=x)
    decisions = []
    banked = Fraction(0)
    for epoch in range(horizon // granularity):
        accept, decline, survive = epoch_prospects(pay_per_step, p, granularity, banked, death_utility)
        take = prefer(strategy, accept, decline) is Preference.A
        decisions.append(EpochDecision(epoch, survive, "accept" if take else "decline"))
        if take:
            banked += as_fraction(pay_per_step) * granularity
    return decisions
