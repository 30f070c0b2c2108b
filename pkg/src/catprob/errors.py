"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (the class name) so the
command line front end can print one-line diagnostics.
"""


class CatProbError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# finite spaces
class PartitionError(CatProbError, ValueError):
    pass


class UnknownPoint(CatProbError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MismatchedPoints(CatProbError, ValueError):
    pass


class DomainMismatch(CatProbError, ValueError):
    pass


class NonMeasurableMap(CatProbError, ValueError):
    pass


class ExplosionGuard(CatProbError, RuntimeError):
    pass


# measures and kernels
class NotMeasurable(CatProbError, ValueError):
    pass


class NegativeWeight(CatProbError, ValueError):
    pass


class NotNormalized(CatProbError, ValueError):
    pass


class ArityMismatch(CatProbError, ValueError):
    pass


class SpaceMismatch(CatProbError, ValueError):
    pass


class ZeroTotalMass(CatProbError, ValueError):
    pass


class RowNotNormalized(CatProbError, ValueError):
    pass


class NotProbability(CatProbError, ValueError):
    pass


# finite categories
class MalformedTable(CatProbError, ValueError):
    pass


class NotPreorder(CatProbError, ValueError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class AmbientMismatch(CatProbError, ValueError):
    pass


class MalformedMap(CatProbError, ValueError):
    pass


class MalformedComponents(CatProbError, ValueError):
    pass


class UnknownArrow(CatProbError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# declaration files
class ParseError(CatProbError):
    def __init__(self, message, line=0, column=0):
        super().__init__(message)
        self.line = line
        self.column = column

    @property
    def code(self) -> str:
        return "Syntax"

    def __str__(self):
        return f"{self.line}:{self.column}: {self.args[0]}"


class ResolveError(CatProbError):
    """A declaration refers to something that is not there, or names something twice."""

    def __init__(self, message, code: str = "UnknownName"):
        super().__init__(message)
        self._code = code

    @property
    def code(self) -> str:
        return self._code


class InvariantError(CatProbError):
    """Wraps a library error raised while loading a declaration."""

    def __init__(self, cause: CatProbError, where: str = ""):
        super().__init__(f"{where}: {cause}" if where else str(cause))
        self.cause = cause

    @property
    def code(self) -> str:
        return self.cause.code
