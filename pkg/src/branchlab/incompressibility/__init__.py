"""One-world theories as codes, and compressibility tests on binary data."""

from .codec import BoundedCompositionCodec, as_bits, binary_entropy, bounded_set_size, composition_bound
from .codes import Code, OutcomeModel, build_code
from .testing import (
    DEFAULT_SLACK,
    BoundedComposition,
    CompressionVerdict,
    FairCoin,
    FamilyResult,
    compression_test,
    enumerate_family,
    read_bits,
    two_part_bits,
)

__all__ = [
    "BoundedCompositionCodec",
    "BoundedComposition",
    "Code",
    "CompressionVerdict",
    "DEFAULT_SLACK",
    "FairCoin",
    "FamilyResult",
    "OutcomeModel",
    "as_bits",
    "binary_entropy",
    "bounded_set_size",
    "build_code",
    "composition_bound",
    "compression_test",
    "enumerate_family",
    "read_bits",
    "two_part_bits",
]
