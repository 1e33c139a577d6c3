"""Confirmation census: what every inhabitant concludes from their own tape.

Inhabitants who believe in unknown, constant branch weights infer them from
relative frequencies and then treat the inferred weights as an importance
measure over branches. Under that self-chosen measure almost all importance
sits on branches with frequencies like their own, so each of them finds
their own theory confirmed. The census makes this exact, class by class,
and sets it against external measures (simulation counting, qualia
intensity, normative weights).

Distances between weight vectors are L-infinity. An empty tape (N = 0) is
read as the uniform theory and flagged as degenerate.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import EmptyTape, MeasureUnavailable, ZeroEvidence
from .multiverse import (
    BranchClass,
    BranchEnsemble,
    MeasureKind,
    MultiverseSpec,
    ensemble_measure,
    evolve,
    spec_to_dict,
)
from .rationals import as_fraction, format_fraction

__all__ = [
    "WeightTheory",
    "PosteriorGrid",
    "CensusRow",
    "CensusReport",
    "DivergenceReport",
    "infer_weights",
    "update_posterior",
    "branch_importance",
    "importance_mass",
    "confirmation_census",
    "compare_measures",
    "census_float",
    "multinomial",
    "linf_distance",
]


@dataclass(frozen=True)
class WeightTheory:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(as_fraction(x) for x in self.weights)
        if any(x < 0 for x in w) or sum(w) != 1:
            raise ValueError("a weight theory needs non-negative weights summing to 1")
        object.__setattr__(self, "weights", w)

    @classmethod
    def binary(cls, p) -> "WeightTheory":
        p = as_fraction(p)
        return cls((p, 1 - p))

    @classmethod
    def uniform(cls, k: int) -> "WeightTheory":
        return cls((Fraction(1, k),) * k)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __str__(self):
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


def linf_distance(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return max(abs(as_fraction(x) - as_fraction(y)) for x, y in zip(a, b))


def multinomial(counts: Sequence[int]) -> int:
    """Number of tapes with the given outcome counts."""
    total, out = 0, 1
    for r in counts:
        total += r
        out *= math.comb(total, r)
    return out


def infer_weights(branch: BranchClass) -> WeightTheory:
    """Relative-frequency theory read off the class's tape."""
    n = branch.presses
    if n == 0:
        raise EmptyTape("no presses observed; relative frequencies undefined")
    return WeightTheory(tuple(Fraction(r, n) for r in branch.counts))


def _inferred_or_uniform(counts: Sequence[int]) -> tuple[WeightTheory, bool]:
    n = sum(counts)
    if n == 0:
        return WeightTheory.uniform(len(counts)), True
    return WeightTheory(tuple(Fraction(r, n) for r in counts)), False


@dataclass(frozen=True)
class PosteriorGrid:
    """Grid Bayes over weight hypotheses.

    ``hypotheses`` are weight vectors; for binary grids the first component
    is the weight of outcome 0.
    """

    hypotheses: tuple[tuple[Fraction, ...], ...]
    prior: tuple[Fraction, ...]
    posterior: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.hypotheses) != len(self.prior) or len(self.prior) != len(self.posterior):
            raise ValueError("hypotheses, prior and posterior must align")
        for masses in (self.prior, self.posterior):
            if any(m < 0 for m in masses) or sum(masses) != 1:
                raise ValueError("grid masses must be non-negative and sum to 1")

    @classmethod
    def uniform_binary(cls, steps: int) -> "PosteriorGrid":
        """Hypotheses p in {0, 1/steps, ..., 1} with a flat prior."""
        hyps = tuple((Fraction(j, steps), 1 - Fraction(j, steps)) for j in range(steps + 1))
        flat = (Fraction(1, steps + 1),) * (steps + 1)
        return cls(hyps, flat, flat)

    def mode(self) -> tuple[Fraction, ...]:
        best = max(range(len(self.posterior)), key=lambda i: (self.posterior[i], -i))
        return self.hypotheses[best]

    def mass_where(self, predicate) -> Fraction:
        return sum((m for h, m in zip(self.hypotheses, self.posterior) if predicate(h)), Fraction(0))


def update_posterior(grid: PosteriorGrid, branch: BranchClass | Sequence[int]) -> PosteriorGrid:
    """Condition the grid's current belief on an observed count vector.

    The returned grid's prior is the belief before this observation.
    """
    counts = branch.counts if isinstance(branch, BranchClass) else tuple(branch)
    start = grid.posterior
    unnormalised = []
    for h, m in zip(grid.hypotheses, start):
        like = Fraction(1)
        for hi, r in zip(h, counts):
            like *= hi**r
        unnormalised.append(m * like)
    total = sum(unnormalised)
    if total == 0:
        raise ZeroEvidence("every hypothesis gives the observation zero likelihood")
    return PosteriorGrid(grid.hypotheses, start, tuple(u / total for u in unnormalised))


def branch_importance(theory: WeightTheory, counts: Sequence[int]) -> Fraction:
    """Importance of one branch: product of theory weights along its tape."""
    out = Fraction(1)
    for p, r in zip(theory.weights, counts):
        out *= p**r
    return out


def importance_mass(theory: WeightTheory, branch: BranchClass | Sequence[int]) -> Fraction:
    """Importance of a whole class: per-branch importance times the number of tapes."""
    counts = branch.counts if isinstance(branch, BranchClass) else tuple(branch)
    if len(counts) != len(theory):
        raise ValueError("theory and class disagree on the number of outcomes")
    return multinomial(counts) * branch_importance(theory, counts)


@dataclass(frozen=True)
class CensusRow:
    counts: tuple[int, ...]
    multiplicity: int
    inferred: WeightTheory
    self_confirmation: Fraction
    measure_mass: Fraction
    decoration: Fraction | None = None
    degenerate: bool = False

    @property
    def zeros(self) -> int:
        return self.counts[0]

    def undecorated(self) -> "CensusRow":
        return replace(self, decoration=None)

    def to_dict(self):
        return {
            "counts": list(self.counts),
            "multiplicity": self.multiplicity,
            "inferred": list(self.inferred.weights),
            "self_confirmation": self.self_confirmation,
            "measure_mass": self.measure_mass,
            "decoration": self.decoration,
            "degenerate": self.degenerate,
        }


@dataclass
class CensusReport:
    spec: MultiverseSpec
    presses: int
    measure: MeasureKind
    tolerance: Fraction
    rows: list[CensusRow] = field(default_factory=list)

    def row(self, counts: Sequence[int]) -> CensusRow:
        counts = tuple(counts)
        for r in self.rows:
            if r.counts == counts:
                return r
        raise KeyError(counts)

    def min_self_confirmation(self) -> Fraction:
        return min(r.self_confirmation for r in self.rows)

    def reference_mass(self, reference: WeightTheory, tolerance=None) -> Fraction:
        """External-measure mass of classes whose inferred theory is near ``reference``."""
        tol = self.tolerance if tolerance is None else as_fraction(tolerance)
        return sum(
            (r.measure_mass for r in self.rows if linf_distance(r.inferred.weights, reference.weights) <= tol),
            Fraction(0),
        )

    def to_dict(self):
        return {
            "spec": spec_to_dict(self.spec),
            "presses": self.presses,
            "measure": self.measure.value,
            "tolerance": self.tolerance,
            "distance": "linf",
            "notes": [
                "self_confirmation: importance, under the class's own inferred theory, of all classes "
                "whose inferred theory lies within tolerance",
                "counting measure over simulations is an assumption, not a derived chance of finding oneself",
            ],
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            [
                "zeros",
                "counts",
                "multiplicity",
                "inferred",
                "self_confirmation",
                "self_confirmation_float",
                "measure_mass",
                "measure_mass_float",
                "decoration",
                "degenerate",
            ]
        )
        for r in self.rows:
            writer.writerow(
                [
                    r.zeros,
                    ";".join(str(c) for c in r.counts),
                    r.multiplicity,
                    ";".join(format_fraction(w) for w in r.inferred.weights),
                    format_fraction(r.self_confirmation),
                    f"{float(r.self_confirmation):.12g}",
                    format_fraction(r.measure_mass),
                    f"{float(r.measure_mass):.12g}",
                    "" if r.decoration is None else format_fraction(r.decoration),
                    int(r.degenerate),
                ]
            )
        return buf.getvalue()


def _self_confirmation(counts, neighbours, n) -> Fraction:
    """Exact importance of ``neighbours`` under the theory ``counts / n``.

    All arithmetic is on integers with a single division by ``n ** n``.
    """
    if n == 0:
        return Fraction(1)
    total = 0
    for other in neighbours:
        term = multinomial(other)
        for r, c in zip(counts, other):
            if c:
                term *= r**c
        total += term
    return Fraction(total, n**n)


def _within(a, b, n, tol) -> bool:
    # |a_i/n - b_i/n| <= tol  <=>  |a_i - b_i| <= tol * n
    bound = tol * n
    return all(abs(x - y) <= bound for x, y in zip(a, b))


def confirmation_census(
    spec: MultiverseSpec,
    presses: int,
    measure: MeasureKind | str = MeasureKind.COUNTING,
    tolerance=Fraction(1, 10),
    *,
    ensemble: BranchEnsemble | None = None,
) -> CensusReport:
    """Tabulate, for every class, the inhabitants' theory and how confirmed they find it."""
    tol = as_fraction(tolerance)
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    measure = MeasureKind(measure)
    ensemble = ensemble or evolve(spec, presses)
    masses = ensemble_measure(ensemble, measure)
    all_counts = [c.counts for c in ensemble]
    report = CensusReport(spec, presses, measure, tol)
    for cls in ensemble:
        theory, degenerate = _inferred_or_uniform(cls.counts)
        near = [c for c in all_counts if _within(c, cls.counts, presses, tol)]
        report.rows.append(
            CensusRow(
                counts=cls.counts,
                multiplicity=cls.multiplicity,
                inferred=theory,
                self_confirmation=_self_confirmation(cls.counts, near, presses),
                measure_mass=masses[cls.counts],
                decoration=cls.decoration,
                degenerate=degenerate,
            )
        )
    return report


@dataclass(frozen=True)
class DivergenceReport:
    presses: int
    reference: WeightTheory
    tolerance: Fraction
    counting_mass: Fraction
    caring_mass: Fraction
    caring_kind: MeasureKind
    near_classes: tuple[tuple[int, ...], ...]
    degenerate: bool = False

    def to_dict(self):
        return {
            "presses": self.presses,
            "reference": list(self.reference.weights),
            "tolerance": self.tolerance,
            "distance": "linf",
            "counting_mass": self.counting_mass,
            "counting_mass_float": float(self.counting_mass),
            "caring_mass": self.caring_mass,
            "caring_mass_float": float(self.caring_mass),
            "caring_kind": self.caring_kind.value,
            "near_classes": [list(c) for c in self.near_classes],
            "degenerate": self.degenerate,
            "notes": ["the counting measure over simulations is an assumption, reported side by side"],
        }


def compare_measures(spec: MultiverseSpec, presses: int, reference: WeightTheory | Sequence, tolerance) -> DivergenceReport:
    """Mass of classes that infer ``reference`` under counting and under the caring measure.

    The caring measure is qualia intensity when qualia factors are present,
    otherwise the normative branch weight.
    """
    if not isinstance(reference, WeightTheory):
        reference = WeightTheory(tuple(reference))
    tol = as_fraction(tolerance)
    if spec.qualia_factors is not None:
        caring = MeasureKind.QUALIA
    elif spec.normative_weights:
        caring = MeasureKind.WEIGHT
    else:
        raise MeasureUnavailable("no caring measure: need qualia factors or normative weights")
    ensemble = evolve(spec, presses)
    counting = ensemble_measure(ensemble, MeasureKind.COUNTING)
    care = ensemble_measure(ensemble, caring)
    near = tuple(
        c.counts for c in ensemble if linf_distance(_inferred_or_uniform(c.counts)[0].weights, reference.weights) <= tol
    )
    return DivergenceReport(
        presses,
        reference,
        tol,
        sum((counting[c] for c in near), Fraction(0)),
        sum((care[c] for c in near), Fraction(0)),
        caring,
        near,
        degenerate=presses == 0,
    )


def census_float(spec: MultiverseSpec, presses: int, tolerance) -> list[dict]:
    """Floating-point census for binary multiverses, for reporting at large N.

    Self-confirmation uses the binomial law under each inferred theory;
    the counting mass uses the per-press counting share of outcome 0.
    Nothing here feeds exact results.
    """
    from scipy.stats import binom

    if spec.outcome_count != 2:
        raise ValueError("the floating-point census handles binary outcomes only")
    n = presses
    tol = float(as_fraction(tolerance))
    counts = spec.successor_counts()
    share = counts[0] / sum(counts)
    rows = []
    for r in range(n, -1, -1):
        p = r / n if n else 0.5
        lo = math.ceil(r - tol * n - 1e-9)
        hi = math.floor(r + tol * n + 1e-9)
        conf = float(binom.cdf(hi, n, p) - binom.cdf(lo - 1, n, p)) if n else 1.0
        rows.append(
            {
                "zeros": r,
                "inferred_zero_weight": p,
                "self_confirmation": conf,
                "counting_mass": float(binom.pmf(r, n, share)),
            }
        )
    return rows
