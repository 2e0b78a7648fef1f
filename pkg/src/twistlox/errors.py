"""Exception types raised across the package."""


class TwistloxError(Exception):
    """Base class for every error raised by twistlox."""


# -- Minkowski algebra -------------------------------------------------------

class LightlikeInput(TwistloxError, ValueError):
    """An angle was requested for a lightlike vector."""


class DegenerateSpan(TwistloxError, ValueError):
    """Two vectors span a degenerate (lightlike) plane or are parallel."""


# -- profile expressions -----------------------------------------------------

class ProfileSyntaxError(TwistloxError, ValueError):
    """Malformed profile expression.

    ``offset`` is the byte offset of the offending token and ``expected``
    the set of tokens the parser would have accepted there.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message}; expected one of {sorted(self.expected)}"
        super().__init__(f"{message} (at offset {offset})")


class UnknownFunction(ProfileSyntaxError):
    pass


class UnknownIdentifier(ProfileSyntaxError):
    pass


class DomainError(TwistloxError, ArithmeticError):
    """Real evaluation failed (log of nonpositive, division by zero, ...)."""

    def __init__(self, message, expr=None):
        self.expr = expr
        if expr is not None:
            message = f"{message} in '{expr}'"
        super().__init__(message)


# -- loxodrome slope ---------------------------------------------------------

class InvalidCase(TwistloxError, ValueError):
    """Flag triple with no row in the (A, B) table."""


class UnsupportedCase(TwistloxError, ValueError):
    """Flag triple outside the cases a formula was derived for."""


class CausalMismatch(TwistloxError, ValueError):
    """Declared causal flags disagree with the local geometry."""


class DegenerateDenominator(TwistloxError, ArithmeticError):
    """The slope denominator vanishes; loxodrome direction undefined."""


class LightlikeTangent(TwistloxError, ValueError):
    """A sampled tangent vector is lightlike."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)
