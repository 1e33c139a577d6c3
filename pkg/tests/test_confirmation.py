import csv
import io
import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from branchlab.confirmation import (
    PosteriorGrid,
    WeightTheory,
    branch_importance,
    census_float,
    compare_measures,
    confirmation_census,
    importance_mass,
    infer_weights,
    update_posterior,
)
from branchlab.errors import EmptyTape, MeasureUnavailable, ZeroEvidence
from branchlab.multiverse import BranchClass, MeasureKind, MultiverseSpec, ensemble_measure, evolve
from oracles import binomial_window, mp_binomial_window, mp_grid_posterior_mass


def cls(*counts):
    return BranchClass(tuple(counts))


def test_infer_weights_examples():
    assert infer_weights(cls(3, 1)).weights == (F(3, 4), F(1, 4))
    assert infer_weights(cls(0, 7)).weights == (0, 1)
    assert infer_weights(cls(50, 50)).weights == (F(1, 2), F(1, 2))
    with pytest.raises(EmptyTape):
        infer_weights(cls(0, 0))


def test_weight_theory_validation():
    with pytest.raises(ValueError):
        WeightTheory((F(1, 2), F(1, 3)))
    with pytest.raises(ValueError):
        WeightTheory((F(3, 2), F(-1, 2)))


def test_posterior_forced_example():
    grid = PosteriorGrid.uniform_binary(2)  # {0, 1/2, 1}
    post = update_posterior(grid, cls(1, 1))
    assert post.posterior == (0, 1, 0)
    assert post.prior == grid.posterior


def test_posterior_empty_observation_is_identity():
    grid = PosteriorGrid.uniform_binary(10)
    assert update_posterior(grid, cls(0, 0)).posterior == grid.posterior


def test_posterior_700_300():
    grid = PosteriorGrid.uniform_binary(100)
    post = update_posterior(grid, (700, 300))
    assert post.mode() == (F(7, 10), F(3, 10))
    mass = post.mass_where(lambda h: F(65, 100) <= h[0] <= F(75, 100))
    assert mass >= F(95, 100)
    # [DERIVED: mpmath log-space grid posterior, independent route]
    oracle = mp_grid_posterior_mass(100, 700, 300, F(65, 100), F(75, 100))
    assert abs(float(mass) - float(oracle)) < 1e-15


def test_posterior_zero_evidence():
    grid = PosteriorGrid((( F(1), F(0)),), (F(1),), (F(1),))
    with pytest.raises(ZeroEvidence):
        update_posterior(grid, (0, 1))


def test_sequential_updates_compose():
    grid = PosteriorGrid.uniform_binary(20)
    twice = update_posterior(update_posterior(grid, (3, 1)), (2, 4))
    once = update_posterior(grid, (5, 5))
    assert twice.posterior == once.posterior


def test_importance_examples():
    # per-branch importance (3/4)^3 (1/4) = 27/256
    assert branch_importance(WeightTheory((F(3, 4), F(1, 4))), (3, 1)) == F(27, 256)
    assert importance_mass(WeightTheory((F(3, 4), F(1, 4))), cls(3, 1)) == 4 * F(27, 256)
    half = WeightTheory((F(1, 2), F(1, 2)))
    for r in range(11):
        assert importance_mass(half, cls(r, 10 - r)) == F(math.comb(10, r), 2**10)


@given(st.integers(0, 20), st.integers(0, 30))
def test_importance_normalises(j, n):
    theory = WeightTheory.binary(F(j, 20))
    total = sum(importance_mass(theory, c) for c in evolve(MultiverseSpec.weightless(), n))
    assert total == 1


def test_importance_normalises_three_outcomes():
    theory = WeightTheory((F(1, 2), F(1, 3), F(1, 6)))
    assert sum(importance_mass(theory, c) for c in evolve(MultiverseSpec.weightless(3), 9)) == 1


def test_census_class_50_example():
    report = confirmation_census(MultiverseSpec.weightless(), 100, "counting", F(15, 100))
    row = report.row((50, 50))
    # [DERIVED: exact binomial window r' in [35, 65]]
    assert row.self_confirmation == binomial_window(100, F(1, 2), 35, 65)
    assert row.self_confirmation >= F(95, 100)
    assert abs(float(row.self_confirmation) - float(mp_binomial_window(100, F(1, 2), 35, 65))) < 1e-15
    assert row.measure_mass == F(math.comb(100, 50), 2**100)


def test_census_rows_and_csv():
    report = confirmation_census(MultiverseSpec.weightless(), 100, "counting", F(15, 100))
    assert len(report.rows) == 101
    assert sum(r.measure_mass for r in report.rows) == 1
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert len(rows) == 101
    assert rows[50]["zeros"] == "50"
    assert F(rows[50]["self_confirmation"]) == report.row((50, 50)).self_confirmation
    data = report.to_dict()
    assert data["distance"] == "linf"
    assert len(data["rows"]) == 101


def test_census_self_confirmation_uses_own_theory():
    report = confirmation_census(MultiverseSpec.weightless(), 40, "counting", F(1, 10))
    for row in report.rows:
        r = row.zeros
        expected = binomial_window(40, F(r, 40), r - 4, r + 4)
        assert row.self_confirmation == expected


def test_census_decorative_equals_weightless():
    a = confirmation_census(MultiverseSpec.weightless(), 30, "counting", F(1, 10))
    b = confirmation_census(MultiverseSpec.decorative([F(1, 5), F(4, 5)]), 30, "counting", F(1, 10))
    assert [r.undecorated() for r in a.rows] == [r.undecorated() for r in b.rows]
    assert b.rows[0].decoration == F(4, 5) ** 30


def test_census_symmetry_under_relabelling():
    report = confirmation_census(MultiverseSpec.weightless(), 50, "counting", F(1, 10))
    for row in report.rows:
        mirror = report.row(tuple(reversed(row.counts)))
        assert mirror.self_confirmation == row.self_confirmation
        assert mirror.measure_mass == row.measure_mass


@pytest.mark.parametrize("fraction", [F(1, 10), F(3, 10), F(1, 2), F(4, 5)])
def test_self_confirmation_grows_with_n(fraction):
    values = []
    for n in (20, 50, 100, 200):
        report = confirmation_census(MultiverseSpec.weightless(), n, "counting", F(15, 100))
        values.append(report.row((int(fraction * n), n - int(fraction * n))).self_confirmation)
    assert values == sorted(values)


def test_census_n0_is_degenerate():
    report = confirmation_census(MultiverseSpec.weightless(), 0, "counting", F(1, 10))
    (row,) = report.rows
    assert row.degenerate
    assert row.inferred.weights == (F(1, 2), F(1, 2))
    assert row.self_confirmation == 1


def test_census_measure_unavailable():
    with pytest.raises(MeasureUnavailable):
        confirmation_census(MultiverseSpec.weightless(), 5, "weight", F(1, 10))


def test_reference_mass_monotone_in_tolerance():
    report = confirmation_census(MultiverseSpec.replicating([3, 1]), 60, "counting", F(1, 10))
    ref = WeightTheory((F(3, 4), F(1, 4)))
    masses = [report.reference_mass(ref, F(t, 100)) for t in range(0, 60, 5)]
    assert masses == sorted(masses)
    assert masses[-1] <= 1


def test_replicating_counting_is_importance():
    spec = MultiverseSpec.replicating([3, 1])
    theory = WeightTheory((F(3, 4), F(1, 4)))
    for n in (0, 1, 7, 40):
        counting = ensemble_measure(evolve(spec, n), MeasureKind.COUNTING)
        for counts, mass in counting.items():
            assert mass == importance_mass(theory, counts)


def test_compare_measures_replicating():
    report = compare_measures(MultiverseSpec.replicating([3, 1]), 100, (F(3, 4), F(1, 4)), F(1, 10))
    # [DERIVED: exact Binomial(100, 3/4) window on [65, 85]]
    assert report.counting_mass == binomial_window(100, F(3, 4), 65, 85)
    assert report.counting_mass >= F(97, 100)
    assert report.caring_kind is MeasureKind.WEIGHT
    assert report.caring_mass == report.counting_mass


def test_compare_measures_qualia():
    report = compare_measures(MultiverseSpec.qualia_enhancing([3, 1]), 100, (F(3, 4), F(1, 4)), F(1, 20))
    assert report.near_classes == tuple((r, 100 - r) for r in range(70, 81))
    assert report.counting_mass == binomial_window(100, F(1, 2), 70, 80)
    assert report.caring_mass == binomial_window(100, F(3, 4), 70, 80)
    assert report.counting_mass <= F(1, 1000)
    assert report.caring_mass >= F(7, 10)


def test_compare_measures_n0():
    report = compare_measures(MultiverseSpec.replicating([3, 1]), 0, (F(1, 2), F(1, 2)), F(1, 10))
    assert report.degenerate
    assert report.counting_mass == report.caring_mass == 1
    far = compare_measures(MultiverseSpec.replicating([3, 1]), 0, (F(3, 4), F(1, 4)), F(1, 10))
    assert far.counting_mass == far.caring_mass == 0


def test_compare_measures_needs_a_caring_measure():
    with pytest.raises(MeasureUnavailable):
        compare_measures(MultiverseSpec.weightless(), 10, (F(1, 2), F(1, 2)), F(1, 10))


def test_float_census_agrees_with_exact():
    spec = MultiverseSpec.weightless()
    exact = confirmation_census(spec, 100, "counting", F(15, 100))
    approx = census_float(spec, 100, F(15, 100))
    for row in approx:
        e = exact.row((row["zeros"], 100 - row["zeros"]))
        assert row["self_confirmation"] == pytest.approx(float(e.self_confirmation), rel=1e-9, abs=1e-12)
        assert row["counting_mass"] == pytest.approx(float(e.measure_mass), rel=1e-9, abs=1e-300)
