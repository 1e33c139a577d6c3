"""Toy branching multiverses and their exact, count-aggregated evolution.

Four variants are modelled:

``CBU1``
    weightless: every press creates one successor per outcome, nothing else.
``CBU2``
    decorative: as CBU1, but each successor carries a number in the sky
    that has no normative role.
``CBU3``
    replicating: outcome ``i`` is realised by ``n_i`` identical
    simulations, so the natural weights are ``n_i / sum(n)``.
``CBU4``
    split-weighted: outcome ``i`` is realised by several successors whose
    written numbers ``q^j_i`` add up to the known constant ``p_i``.

Any variant may also carry per-outcome qualia factors (the qualia
enhancing multiverse is a CBU1 with factors attached).

Branches are never enumerated one by one during evolution. Every measure
used downstream depends only on how often each outcome occurred, so the
ensemble is stored as one :class:`BranchClass` per outcome-count vector.
:func:`enumerate_branches` keeps the naive branch-by-branch picture
around for small ``N`` so the aggregation can be checked against it.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import (
    CapacityError,
    MeasureUnavailable,
    NegativeWeightError,
    QSplitError,
    SpecError,
    WeightSumError,
)
from .rationals import as_fraction, format_fraction

__all__ = [
    "Variant",
    "MeasureKind",
    "MultiverseSpec",
    "BranchClass",
    "BranchEnsemble",
    "DEFAULT_MAX_CLASSES",
    "validate_spec",
    "root_class",
    "press_button",
    "evolve",
    "ensemble_measure",
    "enumerate_branches",
    "count_vectors",
    "spec_to_dict",
    "spec_from_dict",
]

DEFAULT_MAX_CLASSES = 10**7


class Variant(str, enum.Enum):
    CBU1 = "CBU1"
    CBU2 = "CBU2"
    CBU3 = "CBU3"
    CBU4 = "CBU4"


class MeasureKind(str, enum.Enum):
    COUNTING = "counting"
    WEIGHT = "weight"
    QUALIA = "qualia"


def _fraction_tuple(values):
    if values is None:
        return None
    return tuple(as_fraction(v) for v in values)


@dataclass(frozen=True)
class MultiverseSpec:
    """Static description of a toy multiverse.

    Construction only normalises types; :func:`validate_spec` enforces the
    invariants. For CBU3 either ``weights`` or ``replication_counts`` may be
    given and the other is derived.
    """

    variant: Variant
    outcome_count: int = 2
    weights: tuple[Fraction, ...] | None = None
    replication_counts: tuple[int, ...] | None = None
    qualia_factors: tuple[Fraction, ...] | None = None
    q_split: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "weights", _fraction_tuple(self.weights))
        object.__setattr__(self, "qualia_factors", _fraction_tuple(self.qualia_factors))
        if self.replication_counts is not None:
            object.__setattr__(self, "replication_counts", tuple(int(n) for n in self.replication_counts))
        if self.q_split is not None:
            object.__setattr__(self, "q_split", tuple(_fraction_tuple(q) for q in self.q_split))
        if self.variant is Variant.CBU3:
            self._derive_replication()

    def _derive_replication(self):
        if self.replication_counts is not None and self.weights is None:
            total = sum(self.replication_counts)
            if total > 0:
                object.__setattr__(
                    self, "weights", tuple(Fraction(n, total) for n in self.replication_counts)
                )
        elif self.weights is not None and self.replication_counts is None:
            if any(p <= 0 for p in self.weights):
                return  # validate_spec reports this
            scale = math.lcm(*(p.denominator for p in self.weights))
            counts = [int(p * scale) for p in self.weights]
            g = math.gcd(*counts)
            object.__setattr__(self, "replication_counts", tuple(c // g for c in counts))

    @property
    def normative_weights(self) -> bool:
        """True when the branch weights are meant to matter (CBU3, CBU4)."""
        return self.variant in (Variant.CBU3, Variant.CBU4)

    def successor_counts(self, q_split=None) -> tuple[int, ...]:
        """Number of successor universes created per outcome on one press."""
        if self.variant is Variant.CBU3:
            return self.replication_counts
        if self.variant is Variant.CBU4:
            split = self.q_split if q_split is None else q_split
            return tuple(len(q) for q in split)
        return (1,) * self.outcome_count

    @classmethod
    def weightless(cls, outcome_count: int = 2) -> "MultiverseSpec":
        return cls(Variant.CBU1, outcome_count)

    @classmethod
    def decorative(cls, weights: Sequence) -> "MultiverseSpec":
        return cls(Variant.CBU2, len(weights), weights=weights)

    @classmethod
    def replicating(cls, replication_counts: Sequence[int]) -> "MultiverseSpec":
        return cls(Variant.CBU3, len(replication_counts), replication_counts=replication_counts)

    @classmethod
    def qualia_enhancing(cls, qualia_factors: Sequence) -> "MultiverseSpec":
        return cls(Variant.CBU1, len(qualia_factors), qualia_factors=qualia_factors)

    @classmethod
    def split_weighted(cls, weights: Sequence, q_split: Sequence[Sequence]) -> "MultiverseSpec":
        return cls(Variant.CBU4, len(weights), weights=weights, q_split=q_split)


def _check_weight_vector(weights, k, what="weights"):
    if len(weights) != k:
        raise SpecError(f"{what} has {len(weights)} entries for {k} outcomes")
    if any(p < 0 for p in weights):
        raise NegativeWeightError(f"negative entry in {what}: {[format_fraction(p) for p in weights]}")
    total = sum(weights)
    if total != 1:
        raise WeightSumError(f"{what} sum to {format_fraction(total)}, not 1")


def _check_q_split(q_split, weights):
    if len(q_split) != len(weights):
        raise QSplitError(f"q_split has {len(q_split)} outcome lists for {len(weights)} outcomes")
    for i, (qs, p) in enumerate(zip(q_split, weights)):
        if not qs:
            raise QSplitError(f"outcome {i} has no successors")
        if any(q < 0 for q in qs):
            raise NegativeWeightError(f"negative q-split entry for outcome {i}")
        if sum(qs) != p:
            raise QSplitError(
                f"q-split for outcome {i} sums to {format_fraction(sum(qs))}, expected {format_fraction(p)}"
            )


def validate_spec(spec: MultiverseSpec) -> MultiverseSpec:
    """Return ``spec`` unchanged if every invariant holds, raise otherwise."""
    k = spec.outcome_count
    if k < 2:
        raise SpecError("a multiverse needs at least two outcomes per press")
    variant = spec.variant
    if variant is Variant.CBU1:
        if spec.weights is not None or spec.q_split is not None or spec.replication_counts is not None:
            raise SpecError("CBU1 carries no branch weights")
    else:
        if spec.weights is None:
            raise SpecError(f"{variant.value} requires weights")
        _check_weight_vector(spec.weights, k)
    if variant is Variant.CBU3:
        counts = spec.replication_counts
        if counts is None or len(counts) != k:
            raise SpecError("CBU3 needs one replication count per outcome")
        if any(n < 1 for n in counts):
            raise SpecError("replication counts must be positive integers")
        total = sum(counts)
        if any(Fraction(n, total) != p for n, p in zip(counts, spec.weights)):
            raise SpecError("CBU3 weights must be proportional to the replication counts")
    elif spec.replication_counts is not None:
        raise SpecError("replication counts only apply to CBU3")
    if variant is Variant.CBU4:
        if spec.q_split is None:
            raise QSplitError("CBU4 requires a q-split")
        _check_q_split(spec.q_split, spec.weights)
    elif spec.q_split is not None:
        raise SpecError("q-splits only apply to CBU4")
    if spec.qualia_factors is not None:
        if len(spec.qualia_factors) != k:
            raise SpecError("one qualia factor per outcome expected")
        if any(f <= 0 for f in spec.qualia_factors):
            raise SpecError("qualia factors must be positive")
    return spec


@dataclass(frozen=True)
class BranchClass:
    """All branches sharing one outcome-count vector.

    ``weight_mass`` is only set for normative weights (CBU3/CBU4).
    ``decoration`` is the per-branch product of decorative numbers for CBU2,
    the value an inhabitant of any branch in the class could read off the sky
    history; it is identical across the class.
    """

    counts: tuple[int, ...]
    multiplicity: int = 1
    weight_mass: Fraction | None = None
    decoration: Fraction | None = None

    @property
    def presses(self) -> int:
        return sum(self.counts)

    @property
    def zeros(self) -> int:
        """Occurrences of outcome 0 (the ``r`` of the binary discussion)."""
        return self.counts[0]

    def to_dict(self):
        return {
            "counts": list(self.counts),
            "multiplicity": self.multiplicity,
            "weight_mass": self.weight_mass,
            "decoration": self.decoration,
        }


@dataclass(frozen=True)
class BranchEnsemble:
    spec: MultiverseSpec
    steps: int
    classes: tuple[BranchClass, ...] = field(default_factory=tuple)

    def __iter__(self) -> Iterator[BranchClass]:
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    @property
    def total_multiplicity(self) -> int:
        return sum(c.multiplicity for c in self.classes)

    def by_counts(self) -> dict[tuple[int, ...], BranchClass]:
        return {c.counts: c for c in self.classes}


def root_class(spec: MultiverseSpec) -> BranchClass:
    return BranchClass(
        counts=(0,) * spec.outcome_count,
        multiplicity=1,
        weight_mass=Fraction(1) if spec.normative_weights else None,
        decoration=Fraction(1) if spec.variant is Variant.CBU2 else None,
    )


def _override_split(spec: MultiverseSpec, q_split):
    if q_split is None:
        return None
    if spec.variant is not Variant.CBU4:
        raise SpecError("q-split overrides only apply to CBU4")
    q_split = tuple(_fraction_tuple(q) for q in q_split)
    _check_q_split(q_split, spec.weights)
    return q_split


def press_button(spec: MultiverseSpec, parent: BranchClass, q_split=None) -> list[BranchClass]:
    """Replace ``parent`` by one successor class per outcome.

    ``q_split`` overrides the spec's CBU4 split for this press only; it must
    still add up to the constant weights.
    """
    n = spec.successor_counts(_override_split(spec, q_split))
    out = []
    for i in range(spec.outcome_count):
        counts = list(parent.counts)
        counts[i] += 1
        mass = parent.weight_mass * spec.weights[i] if spec.normative_weights else None
        decoration = parent.decoration * spec.weights[i] if spec.variant is Variant.CBU2 else None
        out.append(BranchClass(tuple(counts), parent.multiplicity * n[i], mass, decoration))
    return out


def count_vectors(outcome_count: int, presses: int) -> int:
    """Number of outcome-count vectors, i.e. classes after ``presses`` presses."""
    return math.comb(presses + outcome_count - 1, outcome_count - 1)


def evolve(
    spec: MultiverseSpec,
    presses: int,
    *,
    max_classes: int = DEFAULT_MAX_CLASSES,
    q_overrides: Mapping[int, Sequence[Sequence]] | None = None,
) -> BranchEnsemble:
    """Press the button ``presses`` times in every branch.

    Classes are merged after each press, so the cost is polynomial in the
    number of presses. ``q_overrides`` maps a 0-based press index to a CBU4
    split used for that press only.
    """
    validate_spec(spec)
    if presses < 0:
        raise ValueError("number of presses must be non-negative")
    n_classes = count_vectors(spec.outcome_count, presses)
    if n_classes > max_classes:
        raise CapacityError(f"{n_classes} classes exceed the bound of {max_classes}")
    q_overrides = dict(q_overrides or {})
    k = spec.outcome_count
    # same merge as repeated press_button, but weight masses are carried as
    # integer numerators over scale**step to keep the inner loop gcd-free
    normative = spec.normative_weights
    scale = math.lcm(*(p.denominator for p in spec.weights)) if normative else 1
    w = [int(p * scale) for p in spec.weights] if normative else [0] * k
    current: dict[tuple[int, ...], tuple[int, int]] = {(0,) * k: (1, 1)}
    for step in range(presses):
        n = spec.successor_counts(_override_split(spec, q_overrides.get(step)))
        merged: dict[tuple[int, ...], tuple[int, int]] = {}
        for counts, (mult, num) in current.items():
            for i in range(k):
                child = counts[:i] + (counts[i] + 1,) + counts[i + 1 :]
                m0, w0 = merged.get(child, (0, 0))
                merged[child] = (m0 + mult * n[i], w0 + num * w[i])
        current = merged
    denom = scale**presses
    decorate = spec.variant is Variant.CBU2
    classes = tuple(
        BranchClass(
            counts,
            mult,
            Fraction(num, denom) if normative else None,
            math.prod((p**c for p, c in zip(spec.weights, counts)), start=Fraction(1)) if decorate else None,
        )
        for counts, (mult, num) in sorted(current.items())
    )
    return BranchEnsemble(spec, presses, classes)


def ensemble_measure(ensemble: BranchEnsemble, kind: MeasureKind | str) -> dict[tuple[int, ...], Fraction]:
    """Normalised mass of each class, keyed by its count vector.

    counting: proportional to the number of simulations in the class.
    weight: the normative branch weight (CBU3/CBU4 only).
    qualia: multiplicity times the product of per-outcome qualia factors.
    """
    kind = MeasureKind(kind)
    spec = ensemble.spec
    if kind is MeasureKind.WEIGHT:
        if not spec.normative_weights:
            raise MeasureUnavailable(f"{spec.variant.value} has no normative branch weights")
        return {c.counts: c.weight_mass for c in ensemble}
    if kind is MeasureKind.COUNTING:
        raw = {c.counts: c.multiplicity for c in ensemble}
    else:
        if spec.qualia_factors is None:
            raise MeasureUnavailable("no qualia factors on this multiverse")
        raw = {}
        for c in ensemble:
            intensity = Fraction(1)
            for f, r in zip(spec.qualia_factors, c.counts):
                intensity *= f**r
            raw[c.counts] = c.multiplicity * intensity
    total = sum(raw.values())
    return {k: Fraction(v) / total for k, v in raw.items()}


def enumerate_branches(spec: MultiverseSpec, presses: int):
    """Yield every individual simulation as ``(tape, replicas, weight)``.

    ``replicas`` records which of the ``n_i`` copies was taken at each press;
    ``weight`` is the number written into that universe (CBU4), the per
    simulation share of the normative weight (CBU3), or None. Exponential;
    only meant for checking :func:`evolve` on small ``presses``.
    """
    validate_spec(spec)
    k = spec.outcome_count
    per_press = []
    for i in range(k):
        if spec.variant is Variant.CBU4:
            for j, q in enumerate(spec.q_split[i]):
                per_press.append((i, j, q))
        elif spec.variant is Variant.CBU3:
            n = spec.replication_counts[i]
            for j in range(n):
                per_press.append((i, j, spec.weights[i] / n))
        else:
            per_press.append((i, 0, None))
    for path in itertools.product(per_press, repeat=presses):
        tape = tuple(step[0] for step in path)
        replicas = tuple(step[1] for step in path)
        if spec.normative_weights:
            weight = Fraction(1)
            for step in path:
                weight *= step[2]
        else:
            weight = None
        yield tape, replicas, weight


def spec_to_dict(spec: MultiverseSpec) -> dict:
    out = {"variant": spec.variant.value, "outcome_count": spec.outcome_count}
    if spec.weights is not None:
        out["weights"] = [format_fraction(p) for p in spec.weights]
    if spec.replication_counts is not None:
        out["replication_counts"] = list(spec.replication_counts)
    if spec.qualia_factors is not None:
        out["qualia_factors"] = [format_fraction(f) for f in spec.qualia_factors]
    if spec.q_split is not None:
        out["q_split"] = [[format_fraction(q) for q in qs] for qs in spec.q_split]
    return out


def spec_from_dict(data: Mapping) -> MultiverseSpec:
    """Build and validate a spec from its JSON scenario block."""
    try:
        variant = Variant(data["variant"])
    except (KeyError, ValueError) as exc:
        raise SpecError(f"bad or missing variant in {dict(data)!r}") from exc
    k = data.get("outcome_count")
    if k is None:
        for key in ("weights", "replication_counts", "qualia_factors", "q_split"):
            if data.get(key) is not None:
                k = len(data[key])
                break
        else:
            k = 2
    spec = MultiverseSpec(
        variant,
        int(k),
        weights=data.get("weights"),
        replication_counts=data.get("replication_counts"),
        qualia_factors=data.get("qualia_factors"),
        q_split=data.get("q_split"),
    )
    return validate_spec(spec)
