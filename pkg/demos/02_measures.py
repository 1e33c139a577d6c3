"""
Counting versus caring
======================

Replicating the universe 3:1 per press makes plain branch counting look
like a (3/4, 1/4) weight theory. Boosting the qualia of one outcome does
not: the caring measure moves, the count of branches stays binomial(1/2).
"""

from fractions import Fraction as F

from branchlab import MultiverseSpec, WeightTheory, compare_measures, ensemble_measure, evolve, importance_mass

spec = MultiverseSpec.replicating([3, 1])
theory = WeightTheory((F(3, 4), F(1, 4)))
counting = ensemble_measure(evolve(spec, 12), "counting")
print("counting == importance at N=12:", all(m == importance_mass(theory, c) for c, m in counting.items()))

rep = compare_measures(spec, 100, (F(3, 4), F(1, 4)), F(1, 10))
print("replicating, near 3/4: counting %.5f caring %.5f" % (float(rep.counting_mass), float(rep.caring_mass)))

qualia = compare_measures(MultiverseSpec.qualia_enhancing([3, 1]), 100, (F(3, 4), F(1, 4)), F(1, 20))
print("qualia, near 3/4: counting %.3e caring %.4f" % (float(qualia.counting_mass), float(qualia.caring_mass)))
print("classes counted as near:", qualia.near_classes[0], "...", qualia.near_classes[-1])
