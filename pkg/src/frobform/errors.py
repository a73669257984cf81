"""Exception hierarchy shared by all frobform modules.

``FrobformError`` marks violated preconditions or bad input (CLI exit 1).
``InternalCheckError`` marks a failed internal consistency assertion, i.e.
a bug or a broken mathematical postcondition (CLI exit 2).
"""


class FrobformError(Exception):
    """Base class for precondition and input errors."""


class InternalCheckError(Exception):
    """A postcondition the library asserts about its own output failed."""


# -- scalar ---------------------------------------------------------------

class ZeroArgument(FrobformError):
    pass


class FactorBoundExceeded(FrobformError):
    pass


# -- linalg ---------------------------------------------------------------

class NonSquare(FrobformError):
    pass


class DimensionMismatch(FrobformError):
    pass


class SingularMatrix(FrobformError):
    pass


# -- algebra --------------------------------------------------------------

class NotAssociative(FrobformError):
    def __init__(self, i, j, k, left, right):
        super().__init__(
            f"associativity fails on basis triple ({i}, {j}, {k}): "
            f"(e{i}*e{j})*e{k} = {left} but e{i}*(e{j}*e{k}) = {right}"
        )
        self.triple = (i, j, k)
        self.witness = (left, right)


class BadUnit(FrobformError):
    pass


class AlgebraMismatch(FrobformError):
    pass


class CharTooSmall(FrobformError):
    pass


class NotLocal(FrobformError):
    pass


# -- frobenius ------------------------------------------------------------

class Degenerate(FrobformError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAUnit(FrobformError):
    pass


class NotAnAutomorphism(FrobformError):
    pass


class Incomplete(FrobformError):
    pass


# -- norms ----------------------------------------------------------------

class BadCharacteristic(FrobformError):
    pass


class NotFixed(FrobformError):
    pass


class NoRootInResidueField(FrobformError):
    pass


class OrderBoundExceeded(FrobformError):
    pass


# -- homothety ------------------------------------------------------------

class NotCentral(FrobformError):
    pass


class NotSymmetric(FrobformError):
    pass


class BadResidue(FrobformError):
    pass


class NotATwist(FrobformError):
    pass


class InfiniteOrder(FrobformError):
    pass


# -- corpus ---------------------------------------------------------------

class ZeroParameter(FrobformError):
    pass


class DegenerateParameters(FrobformError):
    pass


class NotAGroup(FrobformError):
    pass


# -- expression parser ----------------------------------------------------

class ExpressionSyntaxError(FrobformError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownBasisName(FrobformError):
    def __init__(self, name, position):
        super().__init__(f"unknown basis name {name!r} (at position {position})")
        self.name = name
        self.position = position


# -- files ----------------------------------------------------------------

class BadAlgebraFile(FrobformError):
    pass
