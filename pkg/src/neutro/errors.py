"""Exception types raised across the package."""


class NeutroError(Exception):
    """Base class for every error raised by this package."""


class SchemeMismatch(NeutroError):
    pass


class UnknownAttribute(SchemeMismatch):
    pass


class ProjectionNotSubset(SchemeMismatch):
    pass


class UnknownRelation(NeutroError):
    pass


class DomainViolation(NeutroError):
    pass


class GradeOutOfRange(NeutroError, ValueError):
    pass


class NotTotal(NeutroError):
    pass


class NotFunctional(NeutroError):
    pass


class NotConsistent(NeutroError):
    pass


class OffGrid(NeutroError):
    pass


class BudgetExceeded(NeutroError):
    pass


class MaterializationLimit(NeutroError):
    pass


class DocumentError(NeutroError):
    """A relation document or catalog manifest could not be parsed."""

    def __init__(self, message, line=None):
        self.message, self.line = message, line
        if line is not None:
            message = "line {0}: {1}".format(line, message)
        super().__init__(message)


class QuerySyntaxError(NeutroError):
    """Raised by the query parser; carries position and the expected tokens."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        text = "{0}:{1}: {2}".format(line, column, message)
        if self.expected:
            text += " (expected one of: {0})".format(", ".join(self.expected))
        super().__init__(text)
