"""
Species evolution and the scenario runner
=========================================

Species B accepts a yearly 50/50 gamble between extinction and trebling.
Across all branches it carries (3/2)^N times the minds of the cautious
species A, while almost every single world sees it die out.
"""

from fractions import Fraction as F

from branchlab import EvolutionConfig, exact_many_worlds, mind_ratio, one_world_ensemble
from branchlab.cli import main

cfg = EvolutionConfig(population=1, years=20)
for pop, mass in exact_many_worlds(cfg).outcomes:
    print("population", pop, "mass", mass)
print("mind ratio", mind_ratio(cfg), "=", float(mind_ratio(cfg)))
print("(3/2)^20 exactly:", mind_ratio(cfg) == F(3, 2) ** 20)

mc = one_world_ensemble(cfg, 10**6, seed=1)
print("one-world extinct fraction %.7f +- %.1e" % (mc.extinct_fraction, mc.exact_sigma))

# the same experiments packaged as JSON scenarios
main(["list"])
main(["run", "species_evolution_N20", "--out-dir", "demo_out"])
