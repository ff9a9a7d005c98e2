"""Exception hierarchy shared by all modules."""


class LinextError(Exception):
    """Base class for all errors raised by linext."""


# field
class NotPrime(LinextError, ValueError):
    pass


class TooSmall(LinextError, ValueError):
    pass


class NonResidue(LinextError, ValueError):
    pass


# exactla
class AmbientMismatch(LinextError, ValueError):
    pass


class Inconsistent(LinextError, ValueError):
    pass


# ring
class DegreeMismatch(LinextError, ValueError):
    pass


class NotLinear(LinextError, ValueError):
    pass


class ArityMismatch(LinextError, ValueError):
    pass


class ShapeMismatch(LinextError, ValueError):
    pass


class NotHomogeneous(LinextError, ValueError):
    pass


# groebner
class SaturationDiverged(LinextError, RuntimeError):
    pass


# strand
class NotMinimal(LinextError, ValueError):
    pass


class NoLinearStrand(LinextError, ValueError):
    pass


# extend
class ConeSuspected(LinextError, ValueError):
    pass


class TrivialNotContained(LinextError, ValueError):
    pass


class ProductNonzero(LinextError, RuntimeError):
    pass


# components
class CharTwo(LinextError, ValueError):
    pass


class RankTooHigh(LinextError, ValueError):
    pass


class NoSplittableElement(LinextError, RuntimeError):
    pass


class ExtensionTooDeep(LinextError, RuntimeError):
    pass


class NotFiniteUnion(LinextError, RuntimeError):
    pass


# reconstruct
class RankDrop(LinextError, RuntimeError):
    pass


# gallery
class DegenerateDraw(LinextError, RuntimeError):
    pass


class InterpolationUnstable(LinextError, RuntimeError):
    pass


# cli / oracle
class ParseError(LinextError, ValueError):
    def __init__(self, msg, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(msg + loc)
        self.line = line
        self.column = column


class PipelineError(LinextError, RuntimeError):
    def __init__(self, stage, cause):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


class TooLarge(LinextError, ValueError):
    pass
