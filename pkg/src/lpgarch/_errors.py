"""Exception types raised across the package."""

import numpy as np


class ParameterDomainError(ValueError):
    """A parameter lies outside its admissible region."""


class SpecificationError(ValueError):
    """Inputs are inconsistent with the requested model specification."""


class SingularityError(np.linalg.LinAlgError):
    """The regression design is rank deficient."""


class PipelineOrderError(RuntimeError):
    """A horizon was requested before the horizons it depends on were estimated."""


class ConfigError(ValueError):
    """Malformed or infeasible experiment configuration."""
