"""Exception hierarchy shared by every module of the package."""


class MotivicError(Exception):
    """Base class for all errors raised by :mod:`motivic`."""


class NotPolynomial(MotivicError):
    """A rational element did not reduce to a Laurent polynomial."""


class PoleAtPoint(MotivicError):
    """Evaluation point is a root of an uncancelled denominator factor."""


class NonIntegralAge(MotivicError):
    """A group element has fractional age (the quotient is not Gorenstein)."""


class NotSmooth(MotivicError):
    """A fan has a maximal cone that is not generated by part of a lattice basis."""


class NotSimplicial(MotivicError):
    """An operation requiring simplicial cones met a non-simplicial one."""


class RayAlreadyPresent(MotivicError):
    pass


class RayOutsideSupport(MotivicError):
    pass


class MixedTerms(MotivicError):
    """A stringy E-function cannot be read as a Betti vector."""


class ParseError(MotivicError, ValueError):
    pass


class FixtureMissing(MotivicError):
    pass
