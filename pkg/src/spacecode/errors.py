"""Exception types raised across the package."""


class SpaceCodeError(ValueError):
    """Base class for every error raised by spacecode."""


class InvalidDistribution(SpaceCodeError):
    pass


class InvalidAlphabet(SpaceCodeError):
    pass


class InvalidProbability(SpaceCodeError):
    pass


class InvalidIndex(SpaceCodeError):
    pass


class InvalidPairing(SpaceCodeError):
    """A code and a distribution disagree on n or k."""


class NotPrefixFree(SpaceCodeError):
    pass


class UnknownSymbol(SpaceCodeError):
    pass


class InvalidSpec(SpaceCodeError):
    pass


class MalformedStream(SpaceCodeError):
    """Raised by the decoder; ``offset`` is the 0-based position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class BudgetExceeded(SpaceCodeError):
    def __init__(self, message, searched):
        super().__init__(f"{message} (searched {searched})")
        self.searched = searched
