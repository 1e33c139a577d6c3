"""
Branching toy multiverses and the confirmation census
=====================================================

A button is pressed N times in every branch. Each inhabitant sees a tape
of outcomes, guesses branch weights from its own frequencies, and asks
how much of the multiverse agrees with that guess.
"""

from fractions import Fraction as F

from branchlab import MultiverseSpec, confirmation_census, evolve

# classes after 4 presses in the weightless (counting-only) universe
for c in evolve(MultiverseSpec.weightless(), 4):
    print(c.counts, "branches:", c.multiplicity)

# every class confirms its own theory at tolerance 0.15
report = confirmation_census(MultiverseSpec.weightless(), 100, "counting", F(15, 100))
print("classes:", len(report.rows))
print("worst self-confirmation: %.5f" % float(report.min_self_confirmation()))

# a few rows, with the theory each class infers
for r in (0, 10, 50, 90):
    row = report.row((r, 100 - r))
    print(r, "zeroes -> infers", [str(w) for w in row.inferred.weights],
          "self-confirmation %.4f" % float(row.self_confirmation))

# writing weights in the sky changes nothing an inhabitant can infer
deco = confirmation_census(MultiverseSpec.decorative([F(1, 3), F(2, 3)]), 30, "counting", F(1, 10))
plain = confirmation_census(MultiverseSpec.weightless(), 30, "counting", F(1, 10))
print("decorations irrelevant:", [r.undecorated() for r in deco.rows] == [r.undecorated() for r in plain.rows])

# mass of inhabitants whose inferred theory is near (1/2, 1/2)
print("near fair: %.4f" % float(report.reference_mass(report.rows[50].inferred, F(5, 100))))
