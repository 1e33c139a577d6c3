"""Enumerative codec for binary strings with a bounded number of zeroes.

``S(N, b)`` is the set of length-``N`` strings with at most ``b`` zeroes,
ordered lexicographically ('0' before '1'). A string's rank is the number
of members of ``S`` that precede it, so ranks fill ``[0, |S|)`` and fit in
``L = ceil(log2 |S|)`` bits.

Ranking needs the partial binomial sums ``F(m, t) = sum_{j<=t} C(m, j)``
for a shrinking suffix length ``m``. Walking the string, ``(m, t)`` moves
to ``(m-1, t)`` or ``(m-1, t-1)``, and both steps follow from Pascal's
rule, so a whole string costs O(N) big-integer operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import IndexRange, OutOfSet
from ..rationals import as_fraction, ceil_log2

__all__ = [
    "BoundedCompositionCodec",
    "bounded_set_size",
    "composition_bound",
    "binary_entropy",
    "as_bits",
]

_BATCH_MAX_N = 62


def as_bits(data) -> str:
    """Normalise a '0'/'1' string or a sequence of 0/1 ints to a str."""
    if isinstance(data, str):
        s = data
    else:
        s = "".join("1" if int(x) else "0" for x in data)
    if set(s) - {"0", "1"}:
        raise ValueError("binary data may only contain 0 and 1")
    return s


def bounded_set_size(n: int, b: int) -> int:
    """|S(n, b)| = sum_{i <= b} C(n, i), exact."""
    if b < 0:
        return 0
    if b >= n:
        return 1 << n
    total, term = 0, 1
    for i in range(b + 1):
        total += term
        term = term * (n - i) // (i + 1)
    return total


def composition_bound(p, n: int, k) -> int:
    """floor(p*n + k*sqrt(n)), exact for rational p and k >= 0."""
    p, k = as_fraction(p), as_fraction(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    base = p * n
    guess = math.floor(float(base) + float(k) * math.sqrt(n))

    def fits(b):
        gap = b - base
        return gap <= 0 or gap * gap <= k * k * n

    while not fits(guess):
        guess -= 1
    while fits(guess + 1):
        guess += 1
    return guess


def binary_entropy(p) -> float:
    p = float(as_fraction(p)) if not isinstance(p, float) else p
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


class _Partial:
    """Running value of F(m, t) with C(m, t) alongside, stepped down in m."""

    __slots__ = ("m", "t", "f", "c")

    def __init__(self, m: int, t: int):
        self.m, self.t = m, t
        if 0 <= t < m:
            self.c = math.comb(m, t)
            self.f = bounded_set_size(m, t)
        else:
            self.c = None
            self.f = self._edge()

    def _edge(self):
        if self.t < 0:
            return 0
        return 1 << self.m

    def step(self, zero: bool):
        m, t = self.m, self.t
        if self.c is None:
            # saturated (t >= m) or empty (t < 0): both are absorbing
            self.m, self.t = m - 1, t - zero
            self.f = self._edge()
            return
        # F(m-1, t) = (F(m, t) + C(m-1, t)) / 2
        c = self.c * (m - t) // m
        f = (self.f + c) >> 1
        if zero:
            # F(m-1, t-1) = F(m-1, t) - C(m-1, t)
            f -= c
            c = c * t // (m - t) if t > 0 else 0
            t -= 1
        m -= 1
        self.m, self.t = m, t
        if t < 0 or t >= m:
            self.c = None
            self.f = self._edge()
        else:
            self.c, self.f = c, f


@dataclass(frozen=True)
class BoundedCompositionCodec:
    n: int
    b: int

    def __post_init__(self):
        if self.n < 0 or self.b < 0:
            raise ValueError("length and bound must be non-negative")

    @property
    def size(self) -> int:
        return bounded_set_size(self.n, self.b)

    @property
    def length(self) -> int:
        """Code length in bits, ceil(log2 |S|)."""
        return ceil_log2(self.size)

    @property
    def id(self) -> str:
        return f"bounded-composition(N={self.n},b={self.b})"

    def contains(self, s) -> bool:
        s = as_bits(s)
        return len(s) == self.n and s.count("0") <= self.b

    def encode(self, s) -> int:
        s = as_bits(s)
        if len(s) != self.n:
            raise OutOfSet(f"string has length {len(s)}, codec expects {self.n}")
        zeros = s.count("0")
        if zeros > self.b:
            raise OutOfSet(f"{zeros} zeroes exceed the bound {self.b}")
        if self.n == 0:
            return 0
        # F counts completions after placing a '0' at the current position
        state = _Partial(self.n - 1, self.b - 1)
        rank = 0
        for i, ch in enumerate(s):
            if ch == "1":
                rank += state.f
            if i + 1 < self.n:
                state.step(ch == "0")
        return rank

    def decode(self, index: int) -> str:
        if not 0 <= index < self.size:
            raise IndexRange(f"index {index} outside [0, {self.size})")
        if self.n == 0:
            return ""
        state = _Partial(self.n - 1, self.b - 1)
        out = []
        for i in range(self.n):
            if index < state.f:
                out.append("0")
            else:
                index -= state.f
                out.append("1")
            if i + 1 < self.n:
                state.step(out[-1] == "0")
        return "".join(out)

    # numpy batch path, for exhaustive checks at small N

    def _table(self) -> np.ndarray:
        """T[m, t + 1] = F(m, t) for t in [-1, n]."""
        if self.n > _BATCH_MAX_N:
            raise ValueError(f"batch coding supports N <= {_BATCH_MAX_N}")
        dtype = np.int32 if self.n <= 30 else np.int64
        table = np.zeros((self.n + 1, self.n + 2), dtype=dtype)
        for m in range(self.n + 1):
            for t in range(self.n + 1):
                table[m, t + 1] = bounded_set_size(m, t)
        return table

    def encode_many(self, bits: np.ndarray) -> np.ndarray:
        """Ranks of the rows of a (count, N) 0/1 array."""
        bits = np.asarray(bits)
        if bits.ndim != 2 or bits.shape[1] != self.n:
            raise ValueError(f"expected shape (count, {self.n})")
        ones = np.asfortranarray(bits != 0)
        if (self.n - ones.sum(axis=1) > self.b).any():
            raise OutOfSet("some rows exceed the zero bound")
        table = self._table()
        rank = np.zeros(ones.shape[0], dtype=table.dtype)
        # budget = b - zeros so far, i.e. t + 1; 0 reads F(m, -1) = 0
        budget = np.full(ones.shape[0], self.b, dtype=table.dtype)
        for i in range(self.n):
            one = ones[:, i]
            rank += table[self.n - 1 - i][budget] * one
            budget -= ~one
        return rank.astype(np.int64)

    def decode_many(self, indices: Iterable[int]) -> np.ndarray:
        table = self._table()
        idx = np.array(indices, dtype=np.int64)
        if ((idx < 0) | (idx >= self.size)).any():
            raise IndexRange("index outside the codec range")
        idx = idx.astype(table.dtype)
        out = np.zeros((idx.size, self.n), dtype=np.int8, order="F")
        budget = np.full(idx.size, self.b, dtype=table.dtype)
        for i in range(self.n):
            f = table[self.n - 1 - i][budget]
            one = idx >= f
            idx -= f * one
            out[:, i] = one
            budget -= ~one
        return np.ascontiguousarray(out)
