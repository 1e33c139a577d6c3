"""Independent reference computations used to freeze expected values.

Nothing here imports the code under test except plain data types, so a
shared bug cannot make an oracle agree with the implementation.
"""

import itertools
import math
from fractions import Fraction

import mpmath


def brute_force_classes(k, presses, successors=None, weights=None, decorations=None):
    """Walk every outcome tape and aggregate by count vector.

    ``successors[i]`` is the number of universes realising outcome ``i`` per
    press; ``weights`` gives the normative per-press weights; ``decorations``
    the numbers written in the sky. Returns counts -> (multiplicity, mass, deco).
    """
    successors = successors or [1] * k
    out = {}
    for tape in itertools.product(range(k), repeat=presses):
        counts = tuple(tape.count(i) for i in range(k))
        mult = math.prod(successors[i] for i in tape)
        mass = math.prod((weights[i] for i in tape), start=Fraction(1)) if weights else None
        deco = math.prod((decorations[i] for i in tape), start=Fraction(1)) if decorations else None
        m0, w0, d0 = out.get(counts, (0, Fraction(0) if weights else None, deco))
        out[counts] = (m0 + mult, (w0 + mass) if weights else None, d0)
    return out


def binomial_window(n, p: Fraction, lo, hi) -> Fraction:
    """Exact P(lo <= X <= hi) for X ~ Binomial(n, p)."""
    lo, hi = max(lo, 0), min(hi, n)
    return sum((math.comb(n, r) * p**r * (1 - p) ** (n - r) for r in range(lo, hi + 1)), Fraction(0))


def mp_binomial_window(n, p, lo, hi, dps=60):
    """Same window with mpmath, via log-gamma, as a second route."""
    with mpmath.workdps(dps):
        p = mpmath.mpf(p.numerator) / p.denominator if isinstance(p, Fraction) else mpmath.mpf(p)
        total = mpmath.mpf(0)
        for r in range(max(lo, 0), min(hi, n) + 1):
            log_c = mpmath.loggamma(n + 1) - mpmath.loggamma(r + 1) - mpmath.loggamma(n - r + 1)
            log_t = log_c + (r * mpmath.log(p) if r else 0) + ((n - r) * mpmath.log(1 - p) if n - r else 0)
            total += mpmath.e**log_t
        return total


def mp_grid_posterior_mass(steps, zeros, ones, lo, hi, dps=80):
    """Grid posterior mass on [lo, hi] with a flat prior, in mpmath."""
    with mpmath.workdps(dps):
        logs = []
        for j in range(steps + 1):
            h = mpmath.mpf(j) / steps
            if (h == 0 and zeros) or (h == 1 and ones):
                logs.append(None)
                continue
            logs.append((zeros * mpmath.log(h) if zeros else 0) + (ones * mpmath.log(1 - h) if ones else 0))
        top = max(v for v in logs if v is not None)
        weights = [mpmath.e ** (v - top) if v is not None else mpmath.mpf(0) for v in logs]
        total = mpmath.fsum(weights)
        inside = mpmath.fsum(w for j, w in enumerate(weights) if lo <= Fraction(j, steps) <= hi)
        return inside / total


def lexicographic_set(n, b):
    """All length-n strings with at most b zeroes, in lexicographic order."""
    return ["".join(t) for t in itertools.product("01", repeat=n) if t.count("0") <= b]


def quantile_by_sorting(pairs, level: Fraction):
    """Utility reached at cumulative weight ``level`` by an independent walk.

    ``pairs`` are (weight, utility); zero-weight entries never win.
    """
    total = Fraction(0)
    for w, u in sorted(((w, u) for w, u in pairs if w > 0), key=lambda t: t[1]):
        total += w
        if total >= level:
            return u
    return max(u for w, u in pairs if w > 0)


def percentile_first_round(prospect_pairs, voters):
    """First-round STV tally from ``voters`` equally spaced percentile voters."""
    tally = [Fraction(0)] * len(prospect_pairs)
    for m in range(voters):
        x = Fraction(2 * m + 1, 2 * voters)
        values = [quantile_by_sorting(p, x) for p in prospect_pairs]
        best = max(values)
        top = [i for i, v in enumerate(values) if v == best]
        for i in top:
            tally[i] += Fraction(1, voters * len(top))
    return tally
