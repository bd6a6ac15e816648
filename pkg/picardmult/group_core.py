'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.


Exact elements of SU(2,1; Z[zeta]), words in the five generators n1..n5
and the homomorphism phi to Z[zeta].
'''
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from picardmult.defines import GENERATOR_COUNT
from picardmult.eisenstein import ONE, SQRT_MINUS3, ZERO, ZETA, EisensteinIdeal, EisensteinInt
from picardmult.exceptions import NotInTower, ParityViolation, WordSyntaxError


Entries = Tuple[Tuple[EisensteinInt, ...], ...]


@dataclass(frozen=True)
class GroupMatrix:
    entries: Entries

    def __post_init__(self):
        rows = tuple(tuple(EisensteinInt.coerce(e) for e in row) for row in self.entries)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise ValueError("group elements are 3x3 matrices")
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def identity(cls) -> GroupMatrix:
        return cls(((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE)))

    @classmethod
    def scalar(cls, w: EisensteinInt) -> GroupMatrix:
        return cls(((w, ZERO, ZERO), (ZERO, w, ZERO), (ZERO, ZERO, w)))

    @classmethod
    def from_json(cls, data) -> GroupMatrix:
        return cls(tuple(tuple(EisensteinInt.from_json(e) for e in row) for row in data))

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]

    def __getitem__(self, index: Tuple[int, int]) -> EisensteinInt:
        i, j = index
        return self.entries[i][j]

    def __str__(self) -> str:
        return '[' + ', '.join('[' + ', '.join(str(e) for e in row) + ']' for row in self.entries) + ']'

    def __matmul__(self, other: GroupMatrix) -> GroupMatrix:
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        a, b = self.entries, other.entries
        return GroupMatrix(tuple(
            tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
            for i in range(3)
        ))

    def transpose(self) -> GroupMatrix:
        return GroupMatrix(tuple(tuple(self.entries[j][i] for j in range(3)) for i in range(3)))

    def conj(self) -> GroupMatrix:
        return GroupMatrix(tuple(tuple(e.conj() for e in row) for row in self.entries))

    def conj_transpose(self) -> GroupMatrix:
        return self.conj().transpose()

    def det(self) -> EisensteinInt:
        m = self.entries
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def is_j_unitary(self) -> bool:
        return self.conj_transpose() @ J @ self == J

    def inverse(self) -> GroupMatrix:
        """
        Exact inverse J g^* J, valid for J-unitary g.
        """
        return J @ self.conj_transpose() @ J

    def is_identity(self) -> bool:
        return self == IDENTITY

    def to_numeric(self) -> np.ndarray:
        return _embed(self.entries)


@lru_cache(maxsize=8192)
def _embed(entries: Entries) -> np.ndarray:
    ret = np.array([[complex(e) for e in row] for row in entries], dtype=complex)
    ret.flags.writeable = False
    return ret


IDENTITY = GroupMatrix.identity()
J = GroupMatrix(((ZERO, ZERO, ONE), (ZERO, ONE, ZERO), (ONE, ZERO, ZERO)))


@dataclass(frozen=True)
class HeisenbergParam:
    z: EisensteinInt
    x: int

    def __post_init__(self):
        object.__setattr__(self, 'z', EisensteinInt.coerce(self.z))
        if (self.x - self.z.norm()) % 2:
            raise ParityViolation(f"n({self.z},{self.x}): x must be congruent to Norm(z) = {self.z.norm()} mod 2")


def make_n(p: HeisenbergParam) -> GroupMatrix:
    """
    n(z, x) = [[1, sqrt(-3) z, (-3 Norm(z) + x sqrt(-3)) / 2],
               [0, 1,          sqrt(-3) conj(z)],
               [0, 0,          1]]
    """
    z, x = p.z, p.x
    corner = EisensteinInt((x - 3 * z.norm()) // 2, x)
    return GroupMatrix((
        (ONE, SQRT_MINUS3 * z, corner),
        (ZERO, ONE, SQRT_MINUS3 * z.conj()),
        (ZERO, ZERO, ONE),
    ))


def make_n_transpose(p: HeisenbergParam) -> GroupMatrix:
    return make_n(p).transpose()


GENERATORS = {
    1: make_n(HeisenbergParam(ONE, 1)),
    2: make_n(HeisenbergParam(ZETA, 1)),
    3: make_n(HeisenbergParam(ZERO, 2)),
    4: make_n_transpose(HeisenbergParam(ONE, 1)),
    5: make_n_transpose(HeisenbergParam(ZERO, 2)),
}
GENERATOR_INVERSES = {i: g.inverse() for i, g in GENERATORS.items()}

PHI_VALUES = {1: ONE, 2: ZETA, 3: ZERO, 4: -ONE, 5: ZERO}


Letter = Tuple[int, int]

_TOKEN = re.compile(r'\s*(?:(n)(\d+)|(-?\d+)|([\^(){}\[\],]))')


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m:
                raise WordSyntaxError(f"unexpected character {stripped[pos:].strip()[:1]!r} in {text!r}")
            if m.group(1):
                self.tokens.append(('gen', int(m.group(2))))
            elif m.group(3) is not None:
                self.tokens.append(('int', int(m.group(3))))
            else:
                self.tokens.append(('sym', m.group(4)))
            pos = m.end()
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise WordSyntaxError(f"expected {value or kind} at token {self.pos} in {self.text!r}")
        self.pos += 1
        return tok[1]

    def parse(self) -> Word:
        word = self.word()
        if self.pos != len(self.tokens):
            raise WordSyntaxError(f"trailing input at token {self.pos} in {self.text!r}")
        return word

    def word(self) -> Word:
        ret = EMPTY_WORD
        while self.peek()[0] == 'gen' or self.peek() in (('sym', '('), ('sym', '[')):
            ret = ret + self.factor()
        return ret

    def factor(self) -> Word:
        kind, value = self.peek()
        if kind == 'gen':
            self.pos += 1
            if not 1 <= value <= GENERATOR_COUNT:
                raise WordSyntaxError(f"unknown generator n{value} in {self.text!r}")
            atom = Word(((value, 1),))
        elif value == '(':
            self.pos += 1
            atom = self.word()
            self.take('sym', ')')
        else:
            self.take('sym', '[')
            u = self.word()
            self.take('sym', ',')
            v = self.word()
            self.take('sym', ']')
            atom = commutator(u, v)
        if self.peek() == ('sym', '^'):
            self.pos += 1
            if self.peek() == ('sym', '{'):
                self.pos += 1
                k = self.take('int')
                self.take('sym', '}')
            else:
                k = self.take('int')
            if k == 0:
                raise WordSyntaxError(f"zero exponent in {self.text!r}")
            atom = atom ** k
        return atom


@dataclass(frozen=True)
class Word:
    """
    Word in n1..n5; letters are (generator index, +1 or -1), read left to right.
    """
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= GENERATOR_COUNT or e not in (1, -1):
                raise WordSyntaxError(f"invalid letter ({i}, {e})")
        object.__setattr__(self, 'letters', letters)

    @classmethod
    def parse(cls, text: str) -> Word:
        return _Parser(text).parse()

    @classmethod
    def generator(cls, index: int, sign: int = 1) -> Word:
        return cls(((index, sign),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __add__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    __mul__ = __add__

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** -k
        return Word(self.letters * k)

    def __str__(self) -> str:
        if not self.letters:
            return '1'
        parts = []
        i = 0
        while i < len(self.letters):
            j = i
            while j < len(self.letters) and self.letters[j] == self.letters[i]:
                j += 1
            gen, sign = self.letters[i]
            k = sign * (j - i)
            parts.append(f"n{gen}" if k == 1 else f"n{gen}^{k}")
            i = j
        return ' '.join(parts)

    def inverse(self) -> Word:
        return Word(tuple((i, -e) for i, e in reversed(self.letters)))

    def reduced(self) -> Word:
        stack: List[Letter] = []
        for i, e in self.letters:
            if stack and stack[-1] == (i, -e):
                stack.pop()
            else:
                stack.append((i, e))
        return Word(tuple(stack))

    def exponent_vector(self) -> Tuple[int, ...]:
        ret = [0] * GENERATOR_COUNT
        for i, e in self.letters:
            ret[i - 1] += e
        return tuple(ret)

    def conjugate(self, by: Word) -> Word:
        """
        by * self * by^-1
        """
        return by + self + by.inverse()

    def rotated(self, k: int) -> Word:
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])

    def to_json(self) -> str:
        return str(self)


EMPTY_WORD = Word()


def commutator(u: Word, v: Word) -> Word:
    """
    [u, v] = u v u^-1 v^-1
    """
    return u + v + u.inverse() + v.inverse()


def letter_matrix(letter: Letter) -> GroupMatrix:
    i, e = letter
    return GENERATORS[i] if e == 1 else GENERATOR_INVERSES[i]


def evaluate(w: Union[Word, Iterable[Letter]]) -> GroupMatrix:
    ret = IDENTITY
    for letter in w:
        ret = ret @ letter_matrix(letter)
    return ret


def prefixes(w: Word) -> Iterator[GroupMatrix]:
    """
    Yields evaluate(w[:k]) for k = 0 .. len(w).
    """
    ret = IDENTITY
    yield ret
    for letter in w:
        ret = ret @ letter_matrix(letter)
        yield ret


def phi(w: Union[Word, Iterable[Letter]]) -> EisensteinInt:
    ret = ZERO
    for i, e in w:
        ret = ret + PHI_VALUES[i] * e
    return ret


def verify_word_identity(w: Word, m: GroupMatrix) -> bool:
    return evaluate(w) == m


def _congruent_identity(m: GroupMatrix, modulus: EisensteinInt) -> bool:
    for i in range(3):
        for j in range(3):
            if not modulus.divides(m[i, j] - (1 if i == j else 0)):
                return False
    return True


def in_gamma(m: GroupMatrix) -> bool:
    return m.det() == ONE and m.is_j_unitary()


def in_gamma_sqrt3(m: GroupMatrix) -> bool:
    return in_gamma(m) and _congruent_identity(m, SQRT_MINUS3)


def in_upsilon(m: GroupMatrix) -> bool:
    return in_gamma_sqrt3(m) and EisensteinInt(3).divides(m[0, 0] - 1)


def _as_ideal(ideal: Union[EisensteinIdeal, EisensteinInt, int]) -> EisensteinIdeal:
    return ideal if isinstance(ideal, EisensteinIdeal) else EisensteinIdeal(EisensteinInt.coerce(ideal))


def in_upsilon_nc(w: Word, ideal: Union[EisensteinIdeal, EisensteinInt, int]) -> bool:
    """
    w lies in phi^-1(ideal).
    """
    return phi(w) in _as_ideal(ideal)


def tower_index(ideal: Union[EisensteinIdeal, EisensteinInt, int]) -> int:
    """
    [Upsilon : phi^-1(I)] = |Z[zeta] / I| = Norm(I), phi being onto.
    """
    return _as_ideal(ideal).norm()


def sample_word(rng: np.random.Generator, max_len: int) -> Word:
    if max_len < 1:
        raise ValueError(f"max_len must be at least 1, got {max_len}")
    length = int(rng.integers(1, max_len + 1))
    gens = rng.integers(1, GENERATOR_COUNT + 1, size=length)
    signs = rng.integers(0, 2, size=length) * 2 - 1
    return Word(tuple((int(g), int(s)) for g, s in zip(gens, signs)))


def sample_words(rng: np.random.Generator, max_len: int, count: int) -> Sequence[Word]:
    return [sample_word(rng, max_len) for _ in range(count)]


def sample_word_in_nc(rng: np.random.Generator, ideal: Union[EisensteinIdeal, EisensteinInt, int], max_len: int) -> Word:
    """
    A random word in phi^-1(2 I): a random draft followed by n1^-a n2^-b, where a + b zeta
    is the Euclidean remainder of phi(draft) modulo 2 I.
    """
    target = _as_ideal(ideal).scaled(2)
    draft = sample_word(rng, max_len)
    r = target.reduce(phi(draft))
    ret = draft + Word.generator(1) ** -r.a + Word.generator(2) ** -r.b
    if not in_upsilon_nc(ret, target):
        raise NotInTower(f"sampled word {ret} has phi = {phi(ret)} outside {target}")
    return ret


# n(zeta, 1)^t as a word in the generators
N_ZETA_TRANSPOSE_WORD = 'n3^-1 n1 n4 n1 n3^-2 n2'
N_ZETA_TRANSPOSE = make_n_transpose(HeisenbergParam(ZETA, 1))
