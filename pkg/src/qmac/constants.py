"""Shared constants for qmac."""

from __future__ import annotations

# Coefficient-field variables, in graded-lex priority order (q > t > a)
VARIABLES = ("q", "t", "a")

# SubsetMask is a 64-bit mask over [n-1]
MAX_SUBSET_DEGREE = 63

# Size guards (|gamma|); |ST(gamma)| grows factorially
DEFAULT_COMPUTE_MAX_N = 8
DEFAULT_VERIFY_MAX_N = 6
DEFAULT_ENUMERATION_MAX_N = 10

DEFAULT_CONFIG_FILE = ".qmac.yml"
THREADS_ENV_VAR = "QMAC_THREADS"
DEFAULT_MAX_THREADS = 8
