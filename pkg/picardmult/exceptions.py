'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''


class ZeroDivisor(Exception):
    pass


class NotDivisible(Exception):
    pass


class ParityViolation(Exception):
    pass


class WordSyntaxError(Exception):
    pass


class NotInTower(Exception):
    pass


class NotInBall(Exception):
    pass


class NotUnitModulus(Exception):
    pass


class NumericInvariantViolation(Exception):
    pass


class PrecisionLoss(Exception):
    pass


class BasePointMismatch(Exception):
    pass


class RelatorMismatch(Exception):
    pass


class NonTwelfthDefect(Exception):
    pass


class SplittingError(Exception):
    pass


class InvalidConfig(Exception):
    pass


class NormalFormError(Exception):
    pass
