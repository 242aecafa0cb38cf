"""Run constants."""

# Defaults of the verify command
DEFAULT_FREQUENCIES = (0.5, 1.0, 2.0)
DEFAULT_IDENTITY_U = (1.0, 2.0)
DEFAULT_EXPONENT_ALPHA = 1.0
FACTORIZATION_TOLERANCE = 1e-10
COUNT_CHECK_MAX = 4

# Error messages
CONFIG_READ_ERROR = "cannot read configuration {path}: {reason}"
CONFIG_FIELD_ERROR = "{location}: {message}"
MISSING_GRID_ERROR = "command {command} needs a nonempty {grid} grid"
MISSING_SIMULATION_ERROR = "command {command} needs a simulation block with a seed"

# Skip reasons of verify entries
SKIP_NO_KILLING = "needs beta > 0"
SKIP_NOT_CRAMER_LUNDBERG = "needs a spectrally positive compound-Poisson model with positive loading"
SKIP_NOT_ERLANG = "needs an erlang inspection scheme"
