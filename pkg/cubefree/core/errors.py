"""
Exception hierarchy shared by every module of the engine
"""

from typing import Optional


class CubefreeError(Exception):
    """Base class for all engine errors"""


class GroupParseError(CubefreeError):
    """Malformed permutation text or group file"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        elif column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class DegreeMismatchError(CubefreeError):
    """Permutations of different degrees were combined"""


class NotSubgroupError(CubefreeError):
    """An element or subgroup does not lie in the ambient group"""


class NotNormalError(CubefreeError):
    """A subgroup expected to be normal is not"""


class IndexBoundError(CubefreeError):
    """Coset action would exceed the configured index cap"""


class OrderBoundError(CubefreeError):
    """Group order exceeds the bound of an exhaustive routine"""


class NotSolvableError(CubefreeError):
    """Operation requires a solvable group"""


class NotCubefreeError(CubefreeError):
    """Group order is divisible by the cube of a prime"""

    def __init__(self, order: int, prime: Optional[int] = None):
        self.order = order
        self.prime = prime
        detail = f" ({prime}^3 divides it)" if prime else ""
        super().__init__(f"order {order} is not cube-free{detail}")


class SingularMatrixError(CubefreeError):
    """Matrix has zero determinant where an invertible one is required"""


class UnsupportedPrimeError(CubefreeError):
    """Routine does not support the given prime"""


class PreconditionError(CubefreeError):
    """Input violates a documented precondition"""


class StructureError(CubefreeError):
    """A subgroup whose existence is guaranteed by theory was not found"""


class VerificationError(CubefreeError):
    """A computed map failed its homomorphism or bijectivity check"""
