"""Monte-Carlo engine constants."""

# Stream tags, combined with the block index into a SeedSequence spawn key
STREAM_RUNNING_MAX = 1
STREAM_INSPECTED = 2
STREAM_RUNNING_MAX_TAIL = 3
STREAM_MINMAX_SUM = 4
STREAM_MINMAX_MAX = 5
STREAM_MINMAX_MIN = 6
STREAM_LINDLEY = 7
STREAM_ALL_TIME_MAX = 8
STREAM_PILOT = 9
STREAM_INCREMENTS = 10
STREAM_PAIR = 11
STREAM_DIFFERENCE = 12

# Steady-state chains: burn-in = BURN_IN_FACTOR / (1 - load), stride = 1 / (1 - load)
BURN_IN_FACTOR = 10.0
PILOT_SIZE = 10_000

# Error messages
UNSTABLE_CHAIN_ERROR = (
    "steady-state waiting time needs E[Z-] > E[Z+]; load {load:.6g} >= 1"
)
MISSING_BURN_IN_ERROR = "beta=0 sampling needs a burn_in (an integer or 'auto')"
EMPTY_SAMPLE_ERROR = "empirical statistics need a nonempty sample"
NEGATIVE_ALPHA_ERROR = "empirical transform needs alpha >= 0, got {alpha}"
