"""Constants shared by both kernel backends."""

# Kernel status codes.
OK = 0
OVERFLOW = 1
NO_CONVERGENCE = 2

# Largest log-magnitude a series term may have before we refuse to exponentiate.
LOG_OVERFLOW = 700.0

# Relative inflation applied to every tail certificate to absorb rounding in
# its own evaluation.
TAIL_SAFETY = 1e-12
