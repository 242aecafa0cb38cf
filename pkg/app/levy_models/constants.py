"""Levy models constants."""

# ParetoLomax transform evaluation
PARETO_QUAD_EPSREL = 1e-10
PARETO_QUAD_LIMIT = 400
# |α s| above which the large-argument expansion is used
PARETO_WATSON_THRESHOLD = 1e4
# |α s| below which the exponential-integral closed form is used for integer shapes
PARETO_EXPINT_LIMIT = 50.0

# Root bracketing
BRACKET_MAX_DOUBLINGS = 200
NEWTON_POLISH_STEPS = 3

# Error messages
OUTSIDE_REGION_ERROR = "{kind} transform is undefined at alpha={alpha}: needs Re(alpha) {relation} {boundary}"
HEAVY_TAIL_ERROR = (
    "{operation} needs a light-tailed claim law; {kind} is heavy-tailed, "
    "use the heavy-tailed bankruptcy asymptote instead"
)
ORIENTATION_ERROR = "{operation} is defined for {expected} models, got {orientation}"
INFINITE_SUPREMUM_ERROR = (
    "beta=0 needs a finite running maximum ({condition}); "
    "otherwise ruin and bankruptcy are certain"
)
