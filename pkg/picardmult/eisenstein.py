'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.


Exact arithmetic in the Eisenstein integers Z[zeta], zeta = exp(2 pi i / 3),
with zeta^2 = -1 - zeta. The element sqrt(-3) is 1 + 2 zeta.
'''
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

from picardmult.exceptions import NonTwelfthDefect, NotDivisible, ZeroDivisor


_HALF_SQRT3 = math.sqrt(3) / 2


@dataclass(frozen=True, slots=True)
class EisensteinInt:
    a: int
    b: int = 0

    @classmethod
    def from_int(cls, x: int) -> EisensteinInt:
        return cls(x, 0)

    @classmethod
    def coerce(cls, x: Union[int, EisensteinInt]) -> EisensteinInt:
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")

    @classmethod
    def from_json(cls, data: Iterable[int]) -> EisensteinInt:
        a, b = data
        return cls(int(a), int(b))

    @classmethod
    def parse(cls, text: str) -> EisensteinInt:
        """
        'a,b' -> a + b zeta
        """
        parts = [p.strip() for p in text.split(',')]
        if len(parts) == 1:
            return cls(int(parts[0]), 0)
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))

    def to_json(self) -> list:
        return [self.a, self.b]

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            zeta = 'ζ'
        elif self.b == -1:
            zeta = '-ζ'
        else:
            zeta = f"{self.b}ζ"
        if self.a == 0:
            return zeta
        return f"{self.a}{'' if zeta.startswith('-') else '+'}{zeta}"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, EisensteinInt):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.a, -self.b)

    def __add__(self, other: Union[int, EisensteinInt]) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.a + other, self.b)
        if isinstance(other, EisensteinInt):
            return EisensteinInt(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Union[int, EisensteinInt]) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.a - other, self.b)
        if isinstance(other, EisensteinInt):
            return EisensteinInt(self.a - other.a, self.b - other.b)
        return NotImplemented

    def __rsub__(self, other: int) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other: Union[int, EisensteinInt]) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.a * other, self.b * other)
        if isinstance(other, EisensteinInt):
            bd = self.b * other.b
            return EisensteinInt(self.a * other.a - bd, self.a * other.b + self.b * other.a - bd)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> EisensteinInt:
        if exponent < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __complex__(self) -> complex:
        # imaginary part keeps the sign of b, so b == 0 gives +0.0 and log(-1) = +pi i
        return complex(self.a - self.b / 2, self.b * _HALF_SQRT3)

    def conj(self) -> EisensteinInt:
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def trace(self) -> int:
        return 2 * self.a - self.b

    def divides(self, other: Union[int, EisensteinInt]) -> bool:
        return divides(self, other)

    def divmod_round(self, modulus: EisensteinInt) -> Tuple[EisensteinInt, EisensteinInt]:
        """
        Euclidean division: self = q * modulus + r with norm(r) < norm(modulus).
        q rounds both coordinates of self / modulus to the nearest integer.
        """
        modulus = EisensteinInt.coerce(modulus)
        n = modulus.norm()
        if n == 0:
            raise ZeroDivisor("division by zero in Z[zeta]")
        num = self * modulus.conj()
        q = EisensteinInt((2 * num.a + n) // (2 * n), (2 * num.b + n) // (2 * n))
        return q, self - q * modulus


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
ZETA = EisensteinInt(0, 1)
SQRT_MINUS3 = EisensteinInt(1, 2)
# multiplying by 1 + zeta = -zeta^2 rotates by pi / 3
UNITS = (ONE, EisensteinInt(1, 1), ZETA, -ONE, EisensteinInt(-1, -1), -ZETA)


def conj(w: EisensteinInt) -> EisensteinInt:
    return EisensteinInt.coerce(w).conj()


def norm(w: EisensteinInt) -> int:
    return EisensteinInt.coerce(w).norm()


def trace(w: EisensteinInt) -> int:
    return EisensteinInt.coerce(w).trace()


def tr_over_sqrt_minus3(w: EisensteinInt) -> int:
    """
    Tr(w / sqrt(-3)). With w / sqrt(-3) = w (-1 - 2 zeta) / 3 the trace
    collapses to the zeta coefficient of w.
    """
    return EisensteinInt.coerce(w).b


def tr_over_sqrt_minus3_rational(w: EisensteinInt) -> Fraction:
    """
    Rational evaluation of Tr(w / sqrt(-3)) without the closed form,
    kept as the oracle the closed form is tested against.
    """
    w = EisensteinInt.coerce(w)
    num = w * SQRT_MINUS3.conj()
    return Fraction(num.trace(), SQRT_MINUS3.norm())


def divides(d: EisensteinInt, w: Union[int, EisensteinInt]) -> bool:
    d = EisensteinInt.coerce(d)
    w = EisensteinInt.coerce(w)
    n = d.norm()
    if n == 0:
        raise ZeroDivisor("zero does not divide in Z[zeta]")
    num = w * d.conj()
    return num.a % n == 0 and num.b % n == 0


def div_exact(d: EisensteinInt, w: Union[int, EisensteinInt]) -> EisensteinInt:
    """
    w / d, when d divides w.
    """
    d = EisensteinInt.coerce(d)
    w = EisensteinInt.coerce(w)
    if not divides(d, w):
        raise NotDivisible(f"{d} does not divide {w}")
    n = d.norm()
    num = w * d.conj()
    return EisensteinInt(num.a // n, num.b // n)


def canonical_associate(w: EisensteinInt) -> EisensteinInt:
    """
    The unit multiple of w whose argument lies in [0, pi / 3).
    For a + b zeta this is the condition 0 <= b < a.
    """
    w = EisensteinInt.coerce(w)
    if not w:
        raise ZeroDivisor("the zero element has no canonical associate")
    for unit in UNITS:
        candidate = w * unit
        if 0 <= candidate.b < candidate.a:
            return candidate
    raise AssertionError(f"no associate of {w} in the fundamental sector")


@dataclass(frozen=True, slots=True)
class Twelfth:
    """
    Exact rational num / 12.
    """
    num: int

    @classmethod
    def from_int(cls, x: int) -> Twelfth:
        return cls(12 * x)

    @classmethod
    def from_quarters(cls, k: int) -> Twelfth:
        return cls(3 * k)

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int]) -> Twelfth:
        value = Fraction(value)
        scaled = value * 12
        if scaled.denominator != 1:
            raise NonTwelfthDefect(f"{value} is not a multiple of 1/12")
        return cls(int(scaled))

    @classmethod
    def parse(cls, text: str) -> Twelfth:
        return cls.from_fraction(Fraction(text.strip()))

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 12)

    def is_integer(self) -> bool:
        return self.num % 12 == 0

    def __str__(self) -> str:
        return str(self.as_fraction())

    def __repr__(self) -> str:
        return f"Twelfth({self.num})"

    def __float__(self) -> float:
        return self.num / 12

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Twelfth):
            return self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __neg__(self) -> Twelfth:
        return Twelfth(-self.num)

    def __add__(self, other: Union[int, Twelfth]) -> Twelfth:
        if isinstance(other, int):
            return Twelfth(self.num + 12 * other)
        if isinstance(other, Twelfth):
            return Twelfth(self.num + other.num)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Union[int, Twelfth]) -> Twelfth:
        if isinstance(other, int):
            return Twelfth(self.num - 12 * other)
        if isinstance(other, Twelfth):
            return Twelfth(self.num - other.num)
        return NotImplemented

    def __rsub__(self, other: int) -> Twelfth:
        if isinstance(other, int):
            return Twelfth(12 * other - self.num)
        return NotImplemented

    def __mul__(self, other: int) -> Twelfth:
        if isinstance(other, int):
            return Twelfth(self.num * other)
        return NotImplemented

    __rmul__ = __mul__


TWELFTH_ZERO = Twelfth(0)


@dataclass(frozen=True, slots=True)
class EisensteinIdeal:
    """
    Nonzero principal ideal (gen) of Z[zeta], gen stored as its canonical associate.
    """
    gen: EisensteinInt

    def __post_init__(self):
        object.__setattr__(self, 'gen', canonical_associate(EisensteinInt.coerce(self.gen)))

    @classmethod
    def parse(cls, text: str) -> EisensteinIdeal:
        return cls(EisensteinInt.parse(text))

    @classmethod
    def from_json(cls, data: dict) -> EisensteinIdeal:
        return cls(EisensteinInt.from_json(data['gen']))

    def to_json(self) -> dict:
        return {'gen': self.gen.to_json()}

    def __str__(self) -> str:
        return f"({self.gen})"

    def __contains__(self, w: Union[int, EisensteinInt]) -> bool:
        return divides(self.gen, w)

    def contains(self, w: Union[int, EisensteinInt]) -> bool:
        return w in self

    def norm(self) -> int:
        return self.gen.norm()

    def scaled(self, k: Union[int, EisensteinInt]) -> EisensteinIdeal:
        """
        The ideal k * I.
        """
        return EisensteinIdeal(self.gen * EisensteinInt.coerce(k))

    def reduce(self, w: Union[int, EisensteinInt]) -> EisensteinInt:
        """
        A short representative of w modulo I.
        """
        _, r = EisensteinInt.coerce(w).divmod_round(self.gen)
        return r


def ideal_norm(ideal: EisensteinIdeal) -> int:
    return ideal.norm()


UNIT_IDEAL = EisensteinIdeal(ONE)
