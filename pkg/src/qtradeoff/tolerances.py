"""Shared numerical tolerances.

All modules pull their tolerances from here so the validation surface and the
test assertions stay consistent.
"""

# Input validation (hermiticity, orthonormality, trace, ...).
VALIDATION_TOL = 1e-10

# Analytic assertions (inequalities, equalities between closed forms).
ASSERTION_TOL = 1e-9

# Gap allowed between a sampled lower bound and the analytic value it chases.
ORACLE_GAP = 1e-3

# Looser orthonormality tolerance for bases read from files, which may have
# been written with fewer digits; such bases go through Gram-Schmidt repair.
FILE_INPUT_TOL = 1e-8
