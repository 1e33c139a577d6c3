"""Exception hierarchy shared by every branchlab module."""


class BranchLabError(Exception):
    """Base class for all library errors."""


class SpecError(BranchLabError, ValueError):
    """A multiverse description violates one of its invariants."""


class WeightSumError(SpecError):
    pass


class QSplitError(SpecError):
    pass


class NegativeWeightError(SpecError):
    pass


class CapacityError(BranchLabError):
    """An ensemble would exceed the configured class bound."""


class MeasureUnavailable(BranchLabError):
    """The requested measure is not defined for this multiverse."""


class ProspectError(BranchLabError, ValueError):
    pass


class TieError(BranchLabError):
    """An election ended with several equally supported prospects."""

    def __init__(self, tied, message=None):
        self.tied = tuple(tied)
        super().__init__(message or f"election tied between {list(self.tied)}")


class EmptyTape(BranchLabError, ValueError):
    pass


class ZeroEvidence(BranchLabError, ValueError):
    pass


class TooShort(BranchLabError, ValueError):
    pass


class OutOfSet(BranchLabError, ValueError):
    pass


class IndexRange(BranchLabError, ValueError):
    pass


class EmptyFamily(BranchLabError, ValueError):
    pass


class UnknownKind(BranchLabError, KeyError):
    pass


class ScenarioError(BranchLabError, ValueError):
    """A scenario file failed to parse or validate."""


class KeylessStrategy(BranchLabError, TypeError):
    """The strategy ranks bets by election, not by a key."""
