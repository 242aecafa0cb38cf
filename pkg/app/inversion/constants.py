"""Inversion constants."""

EULER_MIN_TERMS = 15
EULER_MAX_TERMS = 50
STEHFEST_MIN_ORDER = 10
STEHFEST_MAX_ORDER = 18

# ccdf(0) = 1 - transform(ALPHA_AT_INFINITY)
ALPHA_AT_INFINITY = 1e8
# Point used to check that an evaluator accepts complex arguments
COMPLEX_CHECK_POINT = 1.0 + 1.0j
# Below this |s| the ccdf transform (1 - L(s))/s is replaced by a central difference
ORIGIN_GUARD = 1e-10
ORIGIN_STEP = 1e-6

# Stream tag of the exponent estimator
EXPONENT_STREAM = 101

# Error messages
REAL_ONLY_ERROR = (
    "transform cannot be evaluated at complex arguments ({reason}); "
    "use method 'gaver_stehfest' for real-only evaluators"
)
NO_KILLING_ERROR = "the exponent integral needs beta > 0 for integrability, got {beta}"
