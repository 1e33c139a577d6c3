"""
Refuting a fair coin by compression
===================================

A deterministic theory with an unknown input string is refuted when the
data compress far below what the theory allows.
"""

import math
import random
from fractions import Fraction as F

import numpy as np

from branchlab import BoundedComposition, BoundedCompositionCodec, binary_entropy, compression_test, enumerate_family

rng = random.Random(0)
zeros = set(rng.sample(range(10_000), 100))
biased = "".join("0" if i in zeros else "1" for i in range(10_000))
v = compression_test(biased)
print("100 zeroes in 10000:", v.achieved_bits, "bits ->", v.verdict)

noise = "".join(np.random.default_rng(0).choice(["0", "1"], 10_000))
print("PRNG string:", compression_test(noise).verdict)

# the bounded-composition codec ranks strings with few zeroes
codec = BoundedCompositionCodec(4, 1)
print([codec.decode(i) for i in range(codec.size)], "L =", codec.length)

for n in (100, 1000, 10_000):
    c = BoundedComposition(F(1, 4)).codec_for(n)
    print(f"N={n:>5}: L={c.length:>5}  H(1/4)N={binary_entropy(F(1, 4)) * n:8.1f}  "
          f"slack={12 * math.sqrt(n) * math.log2(n):8.1f}")

family = [BoundedComposition(F(j, 100), k) for j in range(1, 51) for k in (1, 2, 4, 10)]
best = enumerate_family(family, "0" * 10 + "1" * 990)
print("best member:", best.member.id, "total bits", best.total_bits)
