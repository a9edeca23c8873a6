"""Exception types shared across the package."""


class CrookedparError(Exception):
    """Base class for all library errors."""


# -- field / linear algebra ------------------------------------------------

class DegreeOutOfRange(CrookedparError):
    pass


class ReducibleModulus(CrookedparError):
    pass


class SingularMatrix(CrookedparError):
    pass


# -- vectorial boolean functions -------------------------------------------

class ZeroDirection(CrookedparError):
    pass


class DegreeTooLargeForMethod(CrookedparError):
    pass


class DegreeTooLarge(CrookedparError):
    pass


# -- function catalog -------------------------------------------------------

class ParamConstraintViolated(CrookedparError):
    pass


class NoElementOfRequiredOrder(CrookedparError):
    pass


class MalformedLutFile(CrookedparError):
    pass


class ModulusMismatch(CrookedparError):
    pass


# -- geometry ----------------------------------------------------------------

class NotAHyperplane(CrookedparError):
    pass


# -- coloring ----------------------------------------------------------------

class InconsistentColoring(CrookedparError):
    pass


class ZeroColor(CrookedparError):
    pass


# -- codes ---------------------------------------------------------------------

class TooFewWords(CrookedparError):
    pass


class NotInHamming(CrookedparError):
    pass


class NoTranslateFound(CrookedparError):
    pass


class MultipleTranslatesFound(CrookedparError):
    pass


class MalformedCodewordFile(CrookedparError):
    pass


# -- equivalence -----------------------------------------------------------------

class DimensionMismatch(CrookedparError):
    pass


class PointNotInHyperplane(CrookedparError):
    pass


# -- cross-cutting ----------------------------------------------------------------

class InvariantViolation(CrookedparError):
    """A property that is supposed to hold unconditionally was refuted.

    Raised loudly instead of returning a bogus result; seeing this means
    either a bug or a genuinely surprising mathematical finding.
    """
