"""Betting strategies for inhabitants of a branching multiverse."""

from .axioms import Axiom, SearchGrid, Witness, find_violation, verify_witness
from .democrat import STVResult, elect_stv, grid_electorate, interval_electorate, pairwise_margin
from .prospect import Entry, Prospect, prospect
from .strategies import Kind, Preference, RankKey, Strategy, WeightMode, evaluate_key, prefer
from .successors import HistoryTree, successor_caring_weights, tree_from_nested
from .timescale import EpochDecision, timescale_decision

__all__ = [
    "Axiom",
    "Entry",
    "EpochDecision",
    "HistoryTree",
    "Kind",
    "Preference",
    "Prospect",
    "RankKey",
    "STVResult",
    "SearchGrid",
    "Strategy",
    "WeightMode",
    "Witness",
    "elect_stv",
    "evaluate_key",
    "find_violation",
    "grid_electorate",
    "interval_electorate",
    "pairwise_margin",
    "prefer",
    "prospect",
    "successor_caring_weights",
    "timescale_decision",
    "tree_from_nested",
    "verify_witness",
]
