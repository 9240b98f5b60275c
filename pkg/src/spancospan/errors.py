"""Exception hierarchy shared by every module."""


class SpanCospanError(Exception):
    """Base class for domain errors."""


class IndexOutOfRange(SpanCospanError):
    pass


class StructureNotPreserved(SpanCospanError):
    pass


class DomainMismatch(SpanCospanError):
    pass


class CodomainMismatch(SpanCospanError):
    pass


class NotACocone(SpanCospanError):
    pass


class NotACone(SpanCospanError):
    pass


class SizeBound(SpanCospanError):
    pass


class FootMismatch(SpanCospanError):
    pass


class CellMismatch(SpanCospanError):
    pass


class InternalNonMonic(SpanCospanError):
    """A composite 2-cell came out with a non-monic leg. Indicates a bug."""


class NotParallel(SpanCospanError):
    pass


class NotComposable(SpanCospanError):
    pass


class InvalidTwoCell(SpanCospanError):
    pass


class NotMono(SpanCospanError):
    pass


class InterfaceIncompatible(SpanCospanError):
    pass


class ParseError(SpanCospanError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(SpanCospanError):
    pass
