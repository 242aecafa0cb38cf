"""Risk analytics constants."""

# Light-tailed inversion damping c = DAMPING_SHARE * θ*
DAMPING_SHARE = 0.9
# Heavy tails: λE[B]/r at or above this is reported as near-critical
NEAR_CRITICAL_LOAD = 1 - 1e-6

# Error and warning messages
NOT_EXPONENTIAL_ERROR = (
    "the exact ruin probability is available for exponential claims only, got {kind}; "
    "use inversion or simulation"
)
LIGHT_TAIL_ERROR = "{operation} needs heavy-tailed (pareto_lomax) claims, got {kind}"
EPSILON_ERROR = "epsilon must lie in (0, 1), got {epsilon}"
NEAR_CRITICAL_WARNING = (
    "safety loading is near zero (lambda*E[B]/r = {load:.9g}); "
    "the heavy-tailed prefactor diverges and is not reported"
)
