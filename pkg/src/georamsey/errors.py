"""Exception hierarchy shared by every layer of the package.

The CLI maps these onto exit codes: ``InvalidInput`` -> 1,
``ContractViolation`` / ``PipelineFailure`` -> 2, ``ValidationFailure`` -> 3.
"""


class GeoRamseyError(Exception):
    pass


class InvalidInput(GeoRamseyError, ValueError):
    """Malformed input: bad coordinates, non-simple graphs, wrong class."""


class ContractViolation(GeoRamseyError, ValueError):
    """A precondition of an operation does not hold (e.g. undersized instance)."""


class PipelineFailure(GeoRamseyError, RuntimeError):
    """A constructive step could not be completed with the configured constant.

    Raised by the recursive tree pipelines when the configured size constant
    is too small for the instance, or when every admissible assembly crosses.
    The calibrator counts these; they never leak an invalid certificate.
    """


class ValidationFailure(GeoRamseyError, RuntimeError):
    """A produced witness failed re-validation. Must never happen."""
