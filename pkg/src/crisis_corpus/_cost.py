"""Gale-Church length cost shared by both alignment backends.

Kept free of other package imports so the compiled kernel and the
pure-Python path read the same constants.
"""
import math

MEAN_RATIO = 1.0
VARIANCE = 6.8

# (source count, target count) in tie-break order
MOVES = ((1, 1), (1, 0), (0, 1), (1, 2), (2, 1), (2, 2))
PRIORS = {
    (1, 1): 0.89,
    (1, 0): 0.0099,
    (0, 1): 0.0099,
    (1, 2): 0.089,
    (2, 1): 0.089,
    (2, 2): 0.011,
}
NEG_LOG_PRIOR = {move: -math.log(p) for move, p in PRIORS.items()}

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)
# above this, erfc(x) is computed from its asymptotic series instead
TAIL_SWITCH = 20.0


def length_penalty(src_len, tgt_len, c=MEAN_RATIO, s2=VARIANCE):
    """-log of the two-sided normal tail probability of the length mismatch."""
    delta = (tgt_len - src_len * c) / math.sqrt(max(src_len, 1) * s2)
    x = abs(delta) / SQRT2
    if x <= TAIL_SWITCH:
        return -math.log(math.erfc(x))
    inv = 1.0 / (x * x)
    series = 1.0 - 0.5 * inv + 0.75 * inv * inv - 1.875 * inv * inv * inv
    return x * x + math.log(x * SQRT_PI) - math.log(series)
