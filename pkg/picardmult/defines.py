'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.


Defines contains the string constants used for commands, checks and
normalizations, as well as the numeric defaults shared by the modules.
'''
# Commands
VERIFY_RELATIONS = 'verify-relations'
ABELIANIZE = 'abelianize'
EXTENSION = 'extension'
SOLVE_SPLIT = 'solve-split'
KAPPA_TABLE = 'kappa-table'
VERIFY_SPLIT = 'verify-split'
SIGMA = 'sigma'
SIGMA_EXACT = 'Sigma'
MULTIPLIER = 'multiplier'
HALFPLANE = 'halfplane'
COCYCLE_RELATION = 'cocycle-relation'
TOWER = 'tower'
ALL = 'all'

COMMANDS = (
    VERIFY_RELATIONS,
    ABELIANIZE,
    EXTENSION,
    SOLVE_SPLIT,
    KAPPA_TABLE,
    VERIFY_SPLIT,
    SIGMA,
    SIGMA_EXACT,
    MULTIPLIER,
    HALFPLANE,
    COCYCLE_RELATION,
    TOWER,
    ALL,
)

# Normalizations of the splitting homomorphism
CANONICAL = 'canonical'
UPPER = 'upper'
REFERENCE = 'reference'
NORMALIZATIONS = (CANONICAL, UPPER, REFERENCE)

# Report
SCHEMA_VERSION = 1

# Exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# Generators n1..n5
GENERATOR_COUNT = 5
GENERATOR_NAMES = ('n1', 'n2', 'n3', 'n4', 'n5')
CENTER_NAME = 'z'

# Numeric defaults
MATRIX_TOL = 1e-9
FUNCTIONAL_TOL = 1e-9
SIGMA_ROUND_TOL = 1e-6
MULTIPLIER_TOL = 1e-8
EXPM_RTOL = 1e-13
ZERO_J_TOL = 1e-12
UNIT_CIRCLE_TOL = 1e-12

# tau_0 = (-1, 0, ..., 0); the second point is used to certify sigma rounding
BASE_POINT = (-1.0 + 0j, 0j)
SECOND_POINT = (-2.0 + 0.5j, 0.3 + 0.2j)

MAX_WORD_LEN = 64
