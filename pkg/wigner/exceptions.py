class WignerError(ValueError):
    """Base class for Wigner-function construction errors"""


class QuadratureNotConverged(WignerError, ArithmeticError):
    """Doubling the quadrature order kept changing the oracle value"""


class WindowTooSmall(WignerError):
    """The kernel G has not decayed at the edges of the momentum window"""


class ImaginaryResidue(WignerError, ArithmeticError):
    """An assembled field that must be real kept a sizeable imaginary part"""


class OutOfDomain(UserWarning):
    """Sheared sample points left the stored grid and were set to zero"""
