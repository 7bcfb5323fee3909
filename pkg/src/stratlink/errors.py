"""Exception hierarchy shared by every module of the package."""


class StratLinkError(Exception):
    """Base class for all errors raised by stratlink."""


class InputError(StratLinkError):
    """Errors caused by malformed or inconsistent user input (CLI exit code 2)."""


# poset / flags
class CycleError(InputError):
    pass


class UnknownElement(InputError, KeyError):
    def __str__(self):  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class EmptyFlag(InputError, ValueError):
    pass


class FlagNotRegular(InputError, ValueError):
    pass


# simplicial complexes
class ChainViolation(InputError):
    pass


class UnknownVertex(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownSimplex(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotSubcomplex(InputError):
    pass


class NotEmbedding(InputError):
    pass


class LabelMismatch(InputError):
    pass


class CollapseError(InputError):
    pass


# delta complexes
class InvalidComplex(InputError):
    pass


class FaceIdentityViolation(InvalidComplex):
    pass


class FlagMismatch(InvalidComplex):
    pass


class PrecursorCycle(InvalidComplex):
    pass


class NotSimplicial(InputError):
    pass


class UnknownCorpusName(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# geometry
class DegenerateProjection(StratLinkError, ValueError):
    pass


class OutsideNeighborhood(StratLinkError, ValueError):
    pass


class NotASubflagChain(InputError, ValueError):
    pass


class InvalidPLFunction(InputError, ValueError):
    pass


# homology
class DecompositionInvalid(InputError):
    pass


# file formats
class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
