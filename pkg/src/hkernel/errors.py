"""Exception hierarchy.

Every error carries a short ``code`` string so that reports and the CLI can
surface a stable identifier independent of the Python class name.
"""


class HKError(Exception):
    code = "ERROR"


class DomainError(HKError, ValueError):
    code = "DOMAIN"


class NonConvergedError(HKError, ArithmeticError):
    code = "NON_CONVERGED"


class PoleParameterError(HKError, ValueError):
    code = "POLE_PARAMETER"


class DimensionMismatchError(HKError, ValueError):
    code = "DIMENSION_MISMATCH"


class LambdaZeroError(HKError, ValueError):
    code = "LAMBDA_ZERO"


class QuadratureFailError(HKError, ArithmeticError):
    code = "QUADRATURE_FAIL"


class GridTooSmallError(HKError, ValueError):
    code = "GRID_TOO_SMALL"


class OriginError(HKError, ValueError):
    code = "ORIGIN"


class AlphaOutOfRangeError(HKError, ValueError):
    code = "ALPHA_OUT_OF_RANGE"


class ContourMismatchError(HKError, ArithmeticError):
    code = "CONTOUR_MISMATCH"


class SeriesMismatchError(HKError, ArithmeticError):
    code = "SERIES_MISMATCH"


class ProfileInvalidError(HKError, ValueError):
    code = "PROFILE_INVALID"


class TruncationDominantError(HKError, ArithmeticError):
    code = "TRUNCATION_DOMINANT"


class IllConditionedError(HKError, ArithmeticError):
    code = "ILL_CONDITIONED"


class UnknownSuiteError(HKError, KeyError):
    code = "UNKNOWN_SUITE"

    def __str__(self):
        # KeyError would quote the message
        return str(self.args[0]) if self.args else ""


class ConfigError(HKError, ValueError):
    code = "CONFIG_INVALID"


class TailNotDecayedWarning(UserWarning):
    """The sampled field does not decay at the ends of the t axis."""

    code = "TAIL_NOT_DECAYED"
