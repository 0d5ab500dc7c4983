"""Exception hierarchy shared by every module of the package."""


class UcaError(Exception):
    """Base class for all domain errors raised by :mod:`uca`."""


class MalformedInput(UcaError):
    """Text could not be parsed in any supported format."""


class InvalidModel(UcaError):
    """A geometric model violates one or more PCA invariants."""

    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("; ".join(self.reasons))


class InvalidSequence(UcaError):
    """An extreme word violates one or more PCA invariants."""

    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("; ".join(self.reasons))


class RowMissing(UcaError):
    pass


class UnknownFormat(UcaError):
    pass


class InconsistentSyntheticGraph(UcaError):
    pass


class TooLarge(UcaError):
    pass


class NotUca(UcaError):
    """The model has no equivalent UCA model; ``witness`` holds the two disjoint greedy cycles."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class HasUniversalArc(UcaError):
    pass


class NotAligned(UcaError):
    pass


class UnsupportedStructure(UcaError):
    pass


class SizeMismatch(UcaError):
    pass


class MalformedInstance(UcaError):
    pass


class GadgetUnavailable(UcaError):
    pass


class InternalError(UcaError):
    """A post-condition check failed; always a bug."""
