"""Exception hierarchy shared by all modules."""


class ParorbError(Exception):
    """Base class for every error raised by this package."""


class InputError(ParorbError, ValueError):
    """Malformed input (bad JSON, wrong lengths, unknown labels)."""


# abelian groups
class RelationViolation(ParorbError):
    pass


class InfiniteGroup(ParorbError):
    pass


# finite groups
class OrderBound(ParorbError):
    pass


class NotAnAction(ParorbError):
    pass


class NotWellDefined(ParorbError):
    """A character or action assignment does not respect the group relations."""


# orbifolds and covers
class UnsupportedGenus(ParorbError):
    pass


class ProductNotOne(ParorbError):
    pass


class OrderViolation(ParorbError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"order of tuple entry {index} does not divide its root order")


class NotGenerating(ParorbError):
    pass


class NotNormal(ParorbError):
    pass


class IncompatibleEnrichment(ParorbError):
    pass


# representations
class GroupMismatch(ParorbError):
    pass


class NonIntegral(ParorbError):
    pass


class NegativeMultiplicity(ParorbError):
    pass


class IncompleteInput(ParorbError):
    pass


# parabolic bundles
class DenominatorMismatch(ParorbError):
    pass


class OrbifoldMismatch(ParorbError):
    pass


class PathMismatch(ParorbError):
    pass


class ClosureMismatch(ParorbError):
    pass


class SearchExhausted(ParorbError):
    def __init__(self, message, closure=None):
        super().__init__(message)
        self.closure = closure


class ConsistencyError(ParorbError, AssertionError):
    """An internal cross-check failed; indicates a bug rather than bad input."""


def ensure(condition, message: str):
    """Raise :class:`ConsistencyError` unless ``condition`` holds (survives ``python -O``)."""
    if not condition:
        raise ConsistencyError(message)
