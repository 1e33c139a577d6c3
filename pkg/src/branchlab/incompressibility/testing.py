"""Compressibility tests of one-world theories against observed bits.

A theory claiming the data are incompressible (a fair coin) predicts that no
description shorter than ``N`` bits exists; a bounded-composition theory
predicts the data sit in ``S(N, b)`` and so need at most ``L`` bits. Both
are checked against a concrete two-part code: the zero count in
``ceil(log2(N+1))`` bits, then the rank among strings with that many zeroes
in ``ceil(log2 C(N, z))`` bits. Beating the claimed bound by more than
``slack`` bits refutes the theory. ``slack`` is the only knob for how much
compression counts as significant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from ..errors import EmptyFamily
from ..rationals import as_fraction, ceil_log2
from .codec import BoundedCompositionCodec, as_bits, composition_bound

__all__ = [
    "FairCoin",
    "BoundedComposition",
    "CompressionVerdict",
    "FamilyResult",
    "two_part_bits",
    "compression_test",
    "enumerate_family",
    "read_bits",
    "DEFAULT_SLACK",
]

DEFAULT_SLACK = 64


@dataclass(frozen=True)
class FairCoin:
    """Hypothesis: the data are algorithmically incompressible."""

    def bound_bits(self, n: int) -> int:
        return n

    def codec_for(self, n: int):
        return None

    @property
    def id(self) -> str:
        return "incompressible_fair"

    def to_dict(self):
        return {"kind": self.id}


@dataclass(frozen=True)
class BoundedComposition:
    """Hypothesis: at most floor(p*N + k*sqrt(N)) of the N bits are zero."""

    p: Fraction
    k: Fraction = Fraction(10)

    def __post_init__(self):
        object.__setattr__(self, "p", as_fraction(self.p))
        object.__setattr__(self, "k", as_fraction(self.k))
        if not 0 <= self.p <= 1 or self.k < 0:
            raise ValueError("need 0 <= p <= 1 and k >= 0")

    def codec_for(self, n: int) -> BoundedCompositionCodec:
        return BoundedCompositionCodec(n, min(n, composition_bound(self.p, n, self.k)))

    def bound_bits(self, n: int) -> int:
        return self.codec_for(n).length

    @property
    def id(self) -> str:
        return f"bounded_composition(p={self.p},k={self.k})"

    def to_dict(self):
        return {"kind": "bounded_composition", "p": self.p, "k": self.k}


@dataclass(frozen=True)
class CompressionVerdict:
    achieved_bits: int
    hypothesis_bound_bits: int
    verdict: str
    codec: str
    length: int
    zeros: int
    slack: int
    in_set: bool = True

    @property
    def refuted(self) -> bool:
        return self.verdict == "refuted"

    def to_dict(self):
        return {
            "achieved_bits": self.achieved_bits,
            "hypothesis_bound_bits": self.hypothesis_bound_bits,
            "verdict": self.verdict,
            "codec": self.codec,
            "length": self.length,
            "zeros": self.zeros,
            "slack": self.slack,
            "in_set": self.in_set,
            "notes": ["slack is the only threshold for significant compression"],
        }


def two_part_bits(n: int, zeros: int) -> int:
    """Length of the count-plus-rank code for a string with ``zeros`` zeroes."""
    return ceil_log2(n + 1) + ceil_log2(math.comb(n, zeros))


def compression_test(data, hypothesis=None, slack: int = DEFAULT_SLACK) -> CompressionVerdict:
    """Refute or retain ``hypothesis`` on ``data``.

    Refuted exactly when the two-part code beats the hypothesis's bound by
    more than ``slack`` bits. A string outside a bounded-composition set
    cannot have been produced by that theory and is refuted outright,
    flagged with ``in_set = False``.
    """
    s = as_bits(data)
    n = len(s)
    if n < 1:
        raise ValueError("compression_test needs at least one bit")
    hypothesis = hypothesis or FairCoin()
    zeros = s.count("0")
    achieved = two_part_bits(n, zeros)
    bound = hypothesis.bound_bits(n)
    codec = hypothesis.codec_for(n)
    in_set = codec is None or codec.contains(s)
    refuted = (not in_set) or achieved < bound - slack
    return CompressionVerdict(
        achieved,
        bound,
        "refuted" if refuted else "retained",
        codec.id if codec is not None else f"two-part(N={n})",
        n,
        zeros,
        slack,
        in_set,
    )


@dataclass(frozen=True)
class FamilyResult:
    index: int
    member: BoundedComposition
    parameter_bits: int
    data_bits: int
    tie: bool
    scores: tuple[int | None, ...]

    @property
    def total_bits(self) -> int:
        return self.parameter_bits + self.data_bits

    def to_dict(self):
        return {
            "index": self.index,
            "member": self.member.to_dict(),
            "parameter_bits": self.parameter_bits,
            "data_bits": self.data_bits,
            "total_bits": self.total_bits,
            "tie": self.tie,
            "scores": list(self.scores),
        }


def enumerate_family(family: Sequence[BoundedComposition], data) -> FamilyResult:
    """Member with the shortest total description of ``data``.

    A member is named by its index in the declared family, which costs
    ``ceil(log2 len(family))`` bits for every member; data bits are the
    member's codec length. Members whose set excludes the data score None.
    Equal scores go to the lower index and the result is flagged.
    """
    family = list(family)
    if not family:
        raise EmptyFamily("no theories to compare")
    s = as_bits(data)
    n = len(s)
    param = ceil_log2(len(family))
    scores = []
    for member in family:
        codec = member.codec_for(n)
        scores.append(param + codec.length if codec.contains(s) else None)
    finite = [x for x in scores if x is not None]
    if not finite:
        raise EmptyFamily("no member of the family admits the data")
    best = min(finite)
    winners = [i for i, x in enumerate(scores) if x == best]
    i = winners[0]
    return FamilyResult(i, family[i], param, best - param, len(winners) > 1, tuple(scores))


def read_bits(source, fmt: str = "ascii") -> str:
    """Load bits from a file path or bytes.

    ``ascii``: the characters 0 and 1, whitespace ignored. ``raw``: every byte
    contributes eight bits, most significant first.
    """
    if isinstance(source, (str, Path)):
        payload = Path(source).read_bytes()
    else:
        payload = bytes(source)
    if fmt == "raw":
        return "".join(f"{byte:08b}" for byte in payload)
    if fmt != "ascii":
        raise ValueError("fmt must be 'ascii' or 'raw'")
    text = "".join(payload.decode("ascii").split())
    return as_bits(text)
