"""Exact laboratory for branching-multiverse decision theory and confirmation.

Subpackages and modules:

- :mod:`branchlab.multiverse`: toy branching universes and their ensembles
- :mod:`branchlab.strategy`: bets, ranking strategies, STV, axiom search
- :mod:`branchlab.confirmation`: weight inference and the confirmation census
- :mod:`branchlab.incompressibility`: codes, codecs and compressibility tests
- :mod:`branchlab.evolution`: the one-world vs many-worlds species model
- :mod:`branchlab.runner`: JSON scenarios (the ``branchlab`` command wraps it)
"""

from . import errors
from .confirmation import (
    CensusReport,
    DivergenceReport,
    PosteriorGrid,
    WeightTheory,
    compare_measures,
    confirmation_census,
    importance_mass,
    infer_weights,
    update_posterior,
)
from .evolution import EvolutionConfig, Policy, exact_many_worlds, mind_ratio, one_world_ensemble
from .incompressibility import (
    BoundedComposition,
    BoundedCompositionCodec,
    FairCoin,
    OutcomeModel,
    binary_entropy,
    build_code,
    compression_test,
    enumerate_family,
)
from .multiverse import (
    BranchClass,
    BranchEnsemble,
    MeasureKind,
    MultiverseSpec,
    Variant,
    ensemble_measure,
    enumerate_branches,
    evolve,
    press_button,
)
from .strategy import (
    Axiom,
    Kind,
    Preference,
    Prospect,
    SearchGrid,
    Strategy,
    WeightMode,
    elect_stv,
    evaluate_key,
    find_violation,
    prefer,
    prospect,
    successor_caring_weights,
    timescale_decision,
)

__version__ = "0.1.0"

__all__ = [
    "Axiom",
    "BoundedComposition",
    "BoundedCompositionCodec",
    "BranchClass",
    "BranchEnsemble",
    "CensusReport",
    "DivergenceReport",
    "EvolutionConfig",
    "FairCoin",
    "Kind",
    "MeasureKind",
    "MultiverseSpec",
    "OutcomeModel",
    "Policy",
    "PosteriorGrid",
    "Preference",
    "Prospect",
    "SearchGrid",
    "Strategy",
    "Variant",
    "WeightMode",
    "WeightTheory",
    "binary_entropy",
    "build_code",
    "compare_measures",
    "compression_test",
    "confirmation_census",
    "elect_stv",
    "ensemble_measure",
    "enumerate_branches",
    "enumerate_family",
    "errors",
    "evaluate_key",
    "evolve",
    "exact_many_worlds",
    "find_violation",
    "importance_mass",
    "infer_weights",
    "mind_ratio",
    "one_world_ensemble",
    "prefer",
    "press_button",
    "prospect",
    "successor_caring_weights",
    "timescale_decision",
    "update_posterior",
]
