class SpectralError(ValueError):
    """Base class for eigenbasis and state construction errors"""


class InvalidState(SpectralError):
    """Coefficients, modes or mass violate the state invariants"""


class DegenerateState(SpectralError):
    """Every projected overlap vanishes, so the state cannot be normalised"""
