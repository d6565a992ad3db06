"""Exception hierarchy shared by every afmlab module."""


class AfmlabError(Exception):
    """Base class for all library errors."""


class InvalidParameter(AfmlabError, ValueError):
    pass


class InvalidEdge(InvalidParameter):
    pass


class DuplicateEdge(InvalidParameter):
    pass


class VertexOutOfRange(InvalidParameter):
    pass


class TooLarge(AfmlabError):
    pass


class ResourceExhausted(AfmlabError):
    pass


class NumericalFailure(AfmlabError, ArithmeticError):
    pass


class InternalInconsistency(AfmlabError):
    """Two independent evaluation routes disagreed beyond tolerance."""


class DivergenceSuspected(AfmlabError, ArithmeticError):
    pass


class NotAntiferromagnetic(AfmlabError, ValueError):
    pass


class ParseError(AfmlabError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AsymmetryError(ParseError):
    pass


class NegativeWeight(ParseError):
    pass
