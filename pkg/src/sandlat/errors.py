"""Exception hierarchy shared by every module."""


class SandlatError(Exception):
    """Base class for all library errors."""


class CompositionError(SandlatError, ValueError):
    pass


class SumMismatch(CompositionError):
    pass


class NegativePart(CompositionError):
    pass


class TooLong(CompositionError):
    pass


class InvalidN(CompositionError):
    pass


class NotAPartition(CompositionError):
    pass


class MismatchedN(CompositionError):
    pass


class PositionOutOfRange(SandlatError, IndexError):
    pass


class InvalidRule(SandlatError, ValueError):
    pass


class CapacityExceeded(SandlatError, RuntimeError):
    pass


class NodeNotInGraph(SandlatError, KeyError):
    pass


class ShotVectorError(SandlatError, ValueError):
    """Raised when the shot-vector recurrence leaves the non-negative integers."""

    def __init__(self, position: int, message: str):
        super().__init__(f"{message} at column {position}")
        self.position = position


class NonIntegral(ShotVectorError):
    def __init__(self, position: int):
        super().__init__(position, "non-integral shot count")


class Negative(ShotVectorError):
    def __init__(self, position: int):
        super().__init__(position, "negative shot count")


class NegativeHeight(SandlatError, ValueError):
    pass


class TriangularCase(SandlatError, ValueError):
    pass


class ThetaOneDegenerate(SandlatError, ValueError):
    pass
