class CurrentError(ValueError):
    """Base class for Wigner current and continuity errors"""


class NodeOnAxis(UserWarning):
    """A contour node sits on y_k = 0, where 1/y_k is singular; it was split"""


class RemovableSingularity(UserWarning):
    """A closed-form current was evaluated a small offset away from a wall"""
