"""Transforms constants."""

# Tolerance on (0, 1] and monotonicity of tabulated transforms
CURVE_SLACK = 1e-12

# Error messages
NONPOSITIVE_RATE_ERROR = "{name} must be > 0, got {value}"
COUNT_ARGUMENT_ERROR = "{name} must be an integer >= {minimum}, got {value}"
ERLANG_SCHEME_ERROR = (
    "the inspected maximum under Erlang({k}) inspection has no closed form; "
    "use the erlang component transforms or simulate it with the Lindley chain"
)
