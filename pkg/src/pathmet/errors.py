"""Exception types raised across the package."""


class PathmetError(Exception):
    """Base class for all library errors."""


class DisconnectedInput(PathmetError):
    pass


class TooSmall(PathmetError):
    pass


class TooLarge(PathmetError):
    pass


class PatternTooLarge(PathmetError):
    pass


class MissingEdge(PathmetError):
    pass


class CycleComponent(PathmetError):
    pass


class InconsistentInput(PathmetError):
    pass


class NonPersistentEdge(PathmetError):
    pass


class NotACycle(PathmetError):
    pass


class CrossingViolation(PathmetError):
    pass


class EvenLength(PathmetError):
    pass


class NotNeighborly(PathmetError):
    pass


class NotInducedSubgraph(PathmetError):
    pass


class QuotientNotStrict(PathmetError):
    pass


class NotStrictlyInducing(PathmetError):
    pass


class PreconditionViolated(PathmetError):
    pass


class NotOuterplanar(PathmetError):
    pass


class NotBiconnected(PathmetError):
    pass


class CorruptData(PathmetError):
    pass


class ResolutionTooLow(PathmetError):
    pass


class ResolutionMismatch(PathmetError):
    pass


class NonPositiveDerivative(PathmetError):
    pass


class FormatError(PathmetError):
    """Malformed text input for one of the file formats."""
