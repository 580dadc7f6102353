"""Exception hierarchy shared by all hamtri modules."""


class HamtriError(Exception):
    """Base class for every error raised by this package."""


# -- embeddings ---------------------------------------------------------------


class EmbeddingError(HamtriError, ValueError):
    """A rotation system does not describe a simple sphere embedding."""


class NonSimpleError(EmbeddingError):
    pass


class NotSphereError(EmbeddingError):
    pass


class InconsistentRotationError(EmbeddingError):
    pass


class NotACycleError(HamtriError, ValueError):
    pass


class AmbiguousSideError(HamtriError, ValueError):
    pass


# -- constructions ------------------------------------------------------------


class TooSmallError(HamtriError, ValueError):
    pass


class BadFaceError(HamtriError, ValueError):
    pass


class EmptyInteriorError(HamtriError, ValueError):
    pass


class NotAnEdgeError(HamtriError, ValueError):
    pass


class NotContractibleError(HamtriError, ValueError):
    """Contracting the edge would create a parallel edge (separating triangle)."""


class FixtureMissingError(HamtriError, FileNotFoundError):
    pass


class FixtureInvalidError(HamtriError, ValueError):
    pass


# -- selection ----------------------------------------------------------------


class DegreeTooHighError(HamtriError, ValueError):
    pass


class PreconditionFailed(HamtriError):
    """An edge-selection hypothesis does not hold.

    ``hypothesis`` names the violated condition and ``witness`` carries the
    offending vertices, cycle or diamond image.
    """

    def __init__(self, hypothesis, witness=None):
        self.hypothesis = hypothesis
        self.witness = witness
        super().__init__(f"{hypothesis}: {witness!r}")


# -- hamiltonicity ------------------------------------------------------------


class ContradictoryConstraintsError(HamtriError, ValueError):
    pass


class BadEndpointsError(HamtriError, ValueError):
    pass


class NotCircuitGraphError(HamtriError, ValueError):
    pass


class SearchExhaustedError(HamtriError):
    """No certified Tutte cycle exists; treated as a red flag by callers."""


# -- file formats -------------------------------------------------------------


class FormatError(HamtriError, ValueError):
    pass


class TruncatedError(FormatError):
    pass


class BadHeaderError(FormatError):
    pass


class InvalidRotationError(FormatError):
    pass


class TooLargeError(FormatError):
    pass
