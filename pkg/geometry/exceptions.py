class GeometryError(ValueError):
    """Base class for billiard geometry errors"""


class InvalidShape(GeometryError):
    """Shape parameters violate the constructor invariants"""


class UnsupportedDimension(GeometryError, NotImplementedError):
    """Surface quadrature requested in a dimension without a contour builder"""
