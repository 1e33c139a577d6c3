"""
Strategies for a branching future
=================================

Prospects are exact weight/utility lists. Each strategy ranks them by a
lexicographic key, except the future-self democrat, which holds an STV
election among percentile voters.
"""

from fractions import Fraction as F

from branchlab import Kind, Strategy, elect_stv, evaluate_key, prefer, prospect, timescale_decision

safe = prospect([(1, 3)], "safe")
gamble = prospect([(F(1, 2), 0), (F(1, 2), 7)], "gamble")
lottery = prospect([(F(9, 10), 1), (F(1, 10), 30)], "lottery")

for kind in (Kind.MEAN_UTILITARIAN, Kind.PRICE_RAWLSIAN, Kind.FUTURE_SELF_ELITIST, Kind.MEDIAN_UTILITARIAN):
    s = Strategy(kind)
    best = max((safe, gamble, lottery), key=lambda p: evaluate_key(s, p))
    print(f"{kind.value:<22} picks {best.name}")

democrat = Strategy(Kind.FUTURE_SELF_DEMOCRAT)
print("democrat, safe vs lottery:", prefer(democrat, safe, lottery).value)

# three regions of percentile mass; majorities go round in a circle
cycle = [
    prospect([(F(2, 5), 3), (F(7, 20), 4), (F(1, 4), 8)], "A"),
    prospect([(F(2, 5), 2), (F(7, 20), 6), (F(1, 4), 7)], "B"),
    prospect([(F(2, 5), 1), (F(7, 20), 5), (F(1, 4), 9)], "C"),
]
result = elect_stv(cycle)
print("STV rounds:", [{k: str(v) for k, v in r.items()} for r in result.rounds])
print("winner:", cycle[result.winner].name)

# paid 1 per step to stand in a field with lethality 1/100 per step
# the granularity must divide the horizon, so 10 and 11 get their own
for horizon, g in ((3600, 1), (10, 10), (11, 11), (3600, 3600)):
    d = timescale_decision(10, 1, F(1, 100), horizon, g)[0]
    print(f"granularity {g:>4}: {d.decision}")
