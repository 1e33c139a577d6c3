"""
Searching for axiom violations
==============================

A bounded grid search over small prospects looks for a counterexample to
each preference axiom and re-checks any witness through prefer().
"""

from branchlab import Axiom, Kind, Strategy, find_violation
from branchlab.strategy.axioms import verify_witness

pairs = [
    (Kind.RIVALROUS_ELITIST, Axiom.P3_DOMINANCE),
    (Kind.MEDIAN_UTILITARIAN, Axiom.P2_SURETHING),
    (Kind.FUTURE_SELF_DEMOCRAT, Axiom.P1A_TRANSITIVITY),
]
for kind, axiom in pairs:
    w = find_violation(Strategy(kind), axiom)
    print(f"{kind.value} breaks {axiom.label}: verified={verify_witness(w)}")
    for name, p in w.prospects.items():
        print("   ", name, [(str(wt), str(u)) for wt, u in ((e.weight, e.utility) for e in p.entries)])

for axiom in Axiom:
    print("MeanUtilitarian,", axiom.label, "->", find_violation(Strategy(Kind.MEAN_UTILITARIAN), axiom))
