"""Exception hierarchy shared by the library and the command line."""


class InvalidWeightsError(ValueError):
    """Weights are not positive, pairwise coprime integers."""


class InconsistentInputError(ValueError):
    """Input data cannot come from any weighted projective plane."""


class AmbiguousRecoveryError(RuntimeError):
    """Several distinct weight triples fit the data.

    Valid weights always give a unique answer, so this indicates a bug.
    """


class NoApproximantError(ValueError):
    """No continued-fraction convergent meets the tolerance under the bound."""


class PoleError(ValueError):
    """A cotangent or cosecant argument is a multiple of pi."""


class RouteMismatchError(AssertionError):
    """Two independent evaluations of the same quantity disagree."""
