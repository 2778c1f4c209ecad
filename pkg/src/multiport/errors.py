"""Exception types shared across the toolkit."""


class MultiportError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(MultiportError, ValueError):
    """Matrix or setup dimensions are invalid or mutually inconsistent."""


class MatrixValidationError(MultiportError, ValueError):
    """A matrix has non-finite entries or violates a structural invariant."""


class TruncationError(MultiportError, ValueError):
    """A photon-number cutoff leaves more tail mass than tolerated."""


class UndefinedEtaError(MultiportError, ValueError):
    """The sub-Poissonian parameter is undefined (zero mean photon number)."""


class InvalidStatisticsError(MultiportError, ValueError):
    """Photon statistics outside the physically allowed range (eta > 1)."""


class DegenerateSetupError(MultiportError, ValueError):
    """Fewer than two detectors receive light; the pair average is undefined."""


class InsufficientSamplesError(MultiportError, ValueError):
    """Not enough shots or records for the requested estimate."""


class OracleLimitError(MultiportError, ValueError):
    """Photon budget of the brute-force Fock oracle exceeded."""


class PreconditionError(MultiportError, ValueError):
    """An operation was called outside its stated domain."""


class ConfigError(MultiportError, ValueError):
    """Experiment configuration is malformed or inconsistent."""
