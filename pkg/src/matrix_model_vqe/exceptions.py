"""Exception hierarchy.

Two families map onto CLI exit codes: configuration problems (exit 2) and
numerical contract violations (exit 3).
"""


class ConfigurationError(ValueError):
    """Invalid model, truncation or run configuration."""


class InvalidTruncationError(ConfigurationError):
    pass


class InvalidParameterError(ConfigurationError):
    pass


class SpecMismatchError(ConfigurationError):
    """A potential was requested for a gauge group/scenario it does not cover."""


class UnsupportedChemicalPotentialError(ConfigurationError):
    pass


class MappingError(ConfigurationError):
    """Operator dimension cannot be mapped onto qubits."""


class NumericalContractError(ArithmeticError):
    """A numerical invariant (Hermiticity, normalization, finiteness) failed."""


class NotHermitianError(NumericalContractError):
    pass


class NonFiniteObjectiveError(NumericalContractError):
    pass
