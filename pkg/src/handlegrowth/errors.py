"""Exception hierarchy shared by every module.

The command-line front end maps any :class:`HandlebodyError` to exit status 4.
"""


class HandlebodyError(Exception):
    """Base class for domain errors."""


class GraphError(HandlebodyError):
    pass


class PathError(GraphError):
    """An edge path is not endpoint-compatible or names an unknown edge."""


class ReducibleMatrixError(HandlebodyError):
    """An operation that needs an irreducible matrix was given a reducible one."""


class ConvergenceError(HandlebodyError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class MoveError(HandlebodyError):
    pass


class MoveNotRealizable(MoveError):
    """Applying the move would make a matrix entry negative."""


class NotATighteningCandidate(MoveError):
    """The weighted gain of the move is not strictly negative."""


class WordError(HandlebodyError):
    pass


class PennerError(HandlebodyError):
    pass


class PennerHypothesisError(PennerError):
    """A twist word does not satisfy the coverage or sign hypotheses."""
