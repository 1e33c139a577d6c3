from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from branchlab.errors import CapacityError, MeasureUnavailable, NegativeWeightError, QSplitError, SpecError, WeightSumError
from branchlab.multiverse import (
    MeasureKind,
    MultiverseSpec,
    Variant,
    count_vectors,
    ensemble_measure,
    enumerate_branches,
    evolve,
    press_button,
    root_class,
    spec_from_dict,
    spec_to_dict,
    validate_spec,
)
from oracles import brute_force_classes

SPECS = {
    "weightless": MultiverseSpec.weightless(),
    "weightless3": MultiverseSpec.weightless(3),
    "decorative": MultiverseSpec.decorative([F(1, 3), F(2, 3)]),
    "replicating": MultiverseSpec.replicating([3, 1]),
    "replicating3": MultiverseSpec.replicating([2, 1, 1]),
    "qualia": MultiverseSpec.qualia_enhancing([3, 1]),
    "split": MultiverseSpec.split_weighted([F(2, 3), F(1, 3)], [[F(1, 3), F(1, 3)], [F(1, 3)]]),
    "split_uneven": MultiverseSpec.split_weighted([F(1, 2), F(1, 2)], [[F(1, 10), F(2, 5)], [F(1, 4), F(1, 8), F(1, 8)]]),
}


def _aggregate_enumeration(spec, n):
    """Collapse enumerate_branches output onto count vectors."""
    mult, mass = Counter(), {}
    for tape, _replicas, weight in enumerate_branches(spec, n):
        counts = tuple(tape.count(i) for i in range(spec.outcome_count))
        mult[counts] += 1
        if weight is not None:
            mass[counts] = mass.get(counts, F(0)) + weight
    return mult, mass


@pytest.mark.parametrize("name", sorted(SPECS))
@pytest.mark.parametrize("n", range(7))
def test_evolve_matches_branch_enumeration(name, n):
    spec = SPECS[name]
    ens = evolve(spec, n)
    mult, mass = _aggregate_enumeration(spec, n)
    assert {c.counts: c.multiplicity for c in ens} == dict(mult)
    if spec.normative_weights:
        assert {c.counts: c.weight_mass for c in ens} == mass


@pytest.mark.parametrize("name", sorted(SPECS))
def test_evolve_matches_tape_walk(name):
    spec = SPECS[name]
    n = 5
    oracle = brute_force_classes(
        spec.outcome_count,
        n,
        successors=list(spec.successor_counts()),
        weights=list(spec.weights) if spec.normative_weights else None,
        decorations=list(spec.weights) if spec.variant is Variant.CBU2 else None,
    )
    for c in evolve(spec, n):
        mult, mass, deco = oracle[c.counts]
        assert c.multiplicity == mult
        assert c.weight_mass == mass
        assert c.decoration == deco


def test_single_press_examples():
    # [TRIVIAL] one successor per outcome, weight mass = p_i
    children = press_button(SPECS["split"], root_class(SPECS["split"]))
    assert [c.multiplicity for c in children] == [2, 1]
    assert [c.weight_mass for c in children] == [F(2, 3), F(1, 3)]
    rep = press_button(SPECS["replicating"], root_class(SPECS["replicating"]))
    assert [c.multiplicity for c in rep] == [3, 1]


def test_weightless_n3_has_binomial_classes():
    # [TRIVIAL] C(3, r) branches with r zeroes
    ens = evolve(MultiverseSpec.weightless(), 3)
    assert {c.zeros: c.multiplicity for c in ens} == {0: 1, 1: 3, 2: 3, 3: 1}
    assert ens.total_multiplicity == 8


def test_n0_is_root_only():
    ens = evolve(SPECS["split"], 0)
    assert len(ens) == 1
    assert ens.classes[0].counts == (0, 0)
    assert ens.classes[0].weight_mass == 1


def test_class_count_formula():
    for k, n in [(2, 10), (3, 7), (4, 5)]:
        assert len(evolve(MultiverseSpec.weightless(k), n)) == count_vectors(k, n)


def test_capacity_error():
    with pytest.raises(CapacityError):
        evolve(MultiverseSpec.weightless(3), 50, max_classes=100)


def test_q_override_per_press():
    spec = SPECS["split"]
    ens = evolve(spec, 2, q_overrides={1: [[F(2, 3)], [F(1, 6), F(1, 6)]]})
    by = ens.by_counts()
    # press 0 uses the spec split (2, 1), press 1 the override (1, 2)
    assert by[(2, 0)].multiplicity == 2 * 1
    assert by[(0, 2)].multiplicity == 1 * 2
    assert by[(1, 1)].multiplicity == 2 * 2 + 1 * 1
    with pytest.raises(QSplitError):
        evolve(spec, 2, q_overrides={0: [[F(1, 3)], [F(1, 3)]]})


@pytest.mark.parametrize(
    "build, error",
    [
        (lambda: MultiverseSpec(Variant.CBU2, 2, weights=[F(1, 2), F(1, 3)]), WeightSumError),
        (lambda: MultiverseSpec(Variant.CBU2, 2, weights=[F(3, 2), F(-1, 2)]), NegativeWeightError),
        (lambda: MultiverseSpec.split_weighted([F(1, 2), F(1, 2)], [[F(1, 4)], [F(1, 2)]]), QSplitError),
        (lambda: MultiverseSpec(Variant.CBU4, 2, weights=[F(1, 2), F(1, 2)]), QSplitError),
        (lambda: MultiverseSpec(Variant.CBU1, 2, weights=[F(1, 2), F(1, 2)]), SpecError),
        (lambda: MultiverseSpec.weightless(1), SpecError),
        (lambda: MultiverseSpec.qualia_enhancing([1, 0]), SpecError),
    ],
)
def test_invalid_specs_rejected(build, error):
    with pytest.raises(error):
        validate_spec(build())


def test_replicating_weights_derived_both_ways():
    a = MultiverseSpec.replicating([3, 1])
    b = MultiverseSpec(Variant.CBU3, 2, weights=[F(3, 4), F(1, 4)])
    assert a.weights == (F(3, 4), F(1, 4))
    assert b.replication_counts == (3, 1)


def test_measures():
    ens = evolve(SPECS["replicating"], 2)
    counting = ensemble_measure(ens, "counting")
    assert counting[(2, 0)] == F(9, 16)
    assert ensemble_measure(ens, MeasureKind.WEIGHT) == counting
    with pytest.raises(MeasureUnavailable):
        ensemble_measure(evolve(SPECS["weightless"], 2), "weight")
    with pytest.raises(MeasureUnavailable):
        ensemble_measure(ens, "qualia")
    q = ensemble_measure(evolve(SPECS["qualia"], 1), "qualia")
    assert q == {(1, 0): F(3, 4), (0, 1): F(1, 4)}


def test_dict_roundtrip():
    for spec in SPECS.values():
        assert spec_from_dict(spec_to_dict(spec)) == spec


# property tests

weights2 = st.integers(1, 99).map(lambda a: (F(a, 100), 1 - F(a, 100)))


@given(st.sampled_from(sorted(SPECS)), st.integers(0, 12))
def test_masses_sum_to_one(name, n):
    ens = evolve(SPECS[name], n)
    for kind in MeasureKind:
        try:
            m = ensemble_measure(ens, kind)
        except MeasureUnavailable:
            continue
        assert sum(m.values()) == 1
        assert all(v >= 0 for v in m.values())


@given(weights2, st.integers(0, 15))
def test_decoration_is_product_of_sky_numbers(w, n):
    spec = MultiverseSpec.decorative(w)
    for c in evolve(spec, n):
        assert c.decoration == w[0] ** c.counts[0] * w[1] ** c.counts[1]


@given(st.lists(st.integers(1, 4), min_size=2, max_size=3), st.integers(0, 8))
def test_replicating_multiplicity_is_multinomial_times_power(counts, n):
    import math

    spec = MultiverseSpec.replicating(counts)
    for c in evolve(spec, n):
        multinomial = math.factorial(n) // math.prod(math.factorial(r) for r in c.counts)
        assert c.multiplicity == multinomial * math.prod(k**r for k, r in zip(counts, c.counts))


@given(weights2, st.integers(0, 10))
def test_weight_mass_independent_of_split(w, n):
    fine = MultiverseSpec.split_weighted(w, [[w[0] / 2, w[0] / 2], [w[1]]])
    coarse = MultiverseSpec.split_weighted(w, [[w[0]], [w[1] / 3, w[1] / 3, w[1] / 3]])
    a = {c.counts: c.weight_mass for c in evolve(fine, n)}
    b = {c.counts: c.weight_mass for c in evolve(coarse, n)}
    assert a == b
