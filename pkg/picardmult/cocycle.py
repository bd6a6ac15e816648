'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.


The integer cocycle sigma of the universal cover, the exact cocycle Sigma,
the extension by (1/12)Z they differ by, the splitting kappa and the
multiplier system ell built from it.
'''
from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from picardmult.ball_model import (TWO_PI_I, BallPoint, Element, base_point, j_tilde, make_torus, plog, product,
                                   sigma_raw)
from picardmult.defines import GENERATOR_COUNT, MULTIPLIER_TOL, SECOND_POINT, SIGMA_ROUND_TOL
from picardmult.eisenstein import EisensteinIdeal, EisensteinInt, Twelfth, TWELFTH_ZERO, tr_over_sqrt_minus3
from picardmult.exceptions import (BasePointMismatch, NonTwelfthDefect, NotInTower, PrecisionLoss, RelatorMismatch,
                                   SplittingError)
from picardmult.group_core import (EMPTY_WORD, GENERATORS, IDENTITY, GroupMatrix, Letter, Word, evaluate,
                                   in_upsilon_nc, letter_matrix, phi)


LOG = logging.getLogger('picardmult')

Points = Tuple[BallPoint, BallPoint]


def second_point(d: int = 2) -> BallPoint:
    return BallPoint(SECOND_POINT + (0j,) * (d - 2))


def default_points(d: int = 2) -> Points:
    return base_point(d), second_point(d)


@lru_cache(maxsize=65536)
def word_matrix(w: Word) -> GroupMatrix:
    return evaluate(w)


def _as_element(g: Union[Word, GroupMatrix, np.ndarray]) -> Element:
    return word_matrix(g) if isinstance(g, Word) else g


def _dim(g: Element) -> int:
    return 2 if isinstance(g, GroupMatrix) else np.asarray(g).shape[0] - 1


def sigma_with_residual(g: Union[Word, GroupMatrix, np.ndarray], h: Union[Word, GroupMatrix, np.ndarray],
                        points: Optional[Points] = None, tol: float = SIGMA_ROUND_TOL) -> Tuple[int, float]:
    """
    sigma(g, h) with the larger of the two rounding residuals. The value is
    evaluated at both points and must round to the same integer at each.
    """
    g, h = _as_element(g), _as_element(h)
    points = points or default_points(_dim(g))
    values = []
    residual = 0.0
    for tau in points:
        raw = sigma_raw(g, h, tau)
        value = round(raw)
        residual = max(residual, abs(raw - value))
        if abs(raw - value) > tol:
            LOG.warning("SIGMA: value %.12f at %s is not within %g of an integer", raw, tau.tau, tol)
            raise PrecisionLoss(f"sigma evaluates to {raw} at {tau.tau}, not within {tol} of an integer")
        values.append(value)
    if len(set(values)) != 1:
        raise BasePointMismatch(f"sigma depends on the base point: {values}")
    return values[0], residual


def sigma(g: Union[Word, GroupMatrix, np.ndarray], h: Union[Word, GroupMatrix, np.ndarray],
          points: Optional[Points] = None, tol: float = SIGMA_ROUND_TOL) -> int:
    return sigma_with_residual(g, h, points, tol)[0]


def Sigma_phi(a: EisensteinInt, b: EisensteinInt) -> Twelfth:
    """
    (1/4) Tr(conj(a) b / sqrt(-3)), the sign for which sigma - Sigma is a
    coboundary when zeta = exp(2 pi i / 3).
    """
    return Twelfth.from_quarters(tr_over_sqrt_minus3(EisensteinInt.coerce(a).conj() * EisensteinInt.coerce(b)))


def Sigma(g: Word, h: Word) -> Twelfth:
    return Sigma_phi(phi(g), phi(h))


def sigma_torus_direct(z: complex, z2: complex) -> int:
    """
    (1 / 2 pi i)(log(z z2) - log(z) - log(z2)) with principal logs.
    """
    zz = complex(z) * complex(z2)
    return round(((plog(zz / abs(zz)) - plog(z) - plog(z2)) / TWO_PI_I).real)


def sigma_torus(z: complex, z2: complex, d: int = 2, tol: float = SIGMA_ROUND_TOL) -> int:
    return sigma(make_torus(z, d), make_torus(z2, d), default_points(d), tol)


class _Context:
    """
    Base points and rounding tolerance for the exact words of the extension.
    """
    def __init__(self, points: Optional[Points] = None, tol: float = SIGMA_ROUND_TOL):
        self.points = points or default_points(2)
        self.tol = tol
        self._letter_central: Dict[Letter, Twelfth] = {}

    def key(self):
        return tuple(tuple(p.tau) for p in self.points), self.tol

    def excess(self, g: GroupMatrix, phi_g: EisensteinInt, h: GroupMatrix, phi_h: EisensteinInt) -> Twelfth:
        """
        (sigma - Sigma)(g, h)
        """
        return Twelfth.from_int(sigma(g, h, self.points, self.tol)) - Sigma_phi(phi_g, phi_h)

    def letter_central(self, letter: Letter) -> Twelfth:
        """
        Central part of the lift of a letter: 0 for n_i, -(sigma - Sigma)(n_i, n_i^-1) for n_i^-1.
        """
        if letter not in self._letter_central:
            i, e = letter
            if e == 1:
                value = TWELFTH_ZERO
            else:
                s = Word.generator(i)
                value = -self.excess(GENERATORS[i], phi(s), letter_matrix(letter), phi(s.inverse()))
            self._letter_central[letter] = value
        return self._letter_central[letter]


_contexts: Dict[tuple, _Context] = {}


def _context(points: Optional[Points], tol: float) -> _Context:
    ctx = _Context(points, tol)
    return _contexts.setdefault(ctx.key(), ctx)


@dataclass(frozen=True)
class ExtensionElement:
    """
    (g, x) in Upsilon x (1/12)Z with (g, x)(g', x') = (gg', x + x' + (sigma - Sigma)(g, g')).
    """
    word: Word = EMPTY_WORD
    central: Twelfth = TWELFTH_ZERO

    @classmethod
    def center(cls) -> ExtensionElement:
        """
        z = (I, 1/12)
        """
        return cls(EMPTY_WORD, Twelfth(1))

    @property
    def matrix(self) -> GroupMatrix:
        return word_matrix(self.word)

    def mul(self, other: ExtensionElement, points: Optional[Points] = None, tol: float = SIGMA_ROUND_TOL) -> ExtensionElement:
        excess = _context(points, tol).excess(self.matrix, phi(self.word), other.matrix, phi(other.word))
        return ExtensionElement(self.word + other.word, self.central + other.central + excess)

    def __mul__(self, other: ExtensionElement) -> ExtensionElement:
        if not isinstance(other, ExtensionElement):
            return NotImplemented
        return self.mul(other)

    def same(self, other: ExtensionElement) -> bool:
        """
        Equality as group elements: same matrix and same central part.
        """
        return self.matrix == other.matrix and self.central == other.central

    def to_json(self) -> dict:
        return {'word': str(self.word), 'central': str(self.central)}


def lift(w: Word, points: Optional[Points] = None, tol: float = SIGMA_ROUND_TOL) -> ExtensionElement:
    """
    Product of the letter lifts of w, accumulated along prefixes.
    """
    ctx = _context(points, tol)
    central = TWELFTH_ZERO
    current = IDENTITY
    phi_current = EisensteinInt(0)
    for letter in w:
        m = letter_matrix(letter)
        phi_letter = phi((letter,))
        central = central + ctx.letter_central(letter) + ctx.excess(current, phi_current, m, phi_letter)
        current = current @ m
        phi_current = phi_current + phi_letter
    return ExtensionElement(w, central)


def defect(relator: Word, points: Optional[Points] = None, tol: float = SIGMA_ROUND_TOL) -> Twelfth:
    """
    The central element (I, x) the lifted relator evaluates to.
    """
    if not word_matrix(relator).is_identity():
        raise RelatorMismatch(f"relator {relator} does not evaluate to the identity")
    return lift(relator, points, tol).central


@dataclass(frozen=True)
class KappaTable:
    """
    kappa on the generators; extended to words by kappa(us) = kappa(u) + kappa(s) + (sigma - Sigma)(u, s).
    """
    values: Mapping[int, Twelfth]
    points: Optional[Points] = field(default=None, compare=False)
    tol: float = field(default=SIGMA_ROUND_TOL, compare=False)

    def __post_init__(self):
        values = {int(i): v if isinstance(v, Twelfth) else Twelfth.from_fraction(v) for i, v in dict(self.values).items()}
        if sorted(values) != list(range(1, GENERATOR_COUNT + 1)):
            raise SplittingError(f"kappa table needs values for n1..n{GENERATOR_COUNT}, got {sorted(values)}")
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_splitting(cls, phi_values: Sequence[Union[Fraction, int]], points: Optional[Points] = None,
                       tol: float = SIGMA_ROUND_TOL) -> KappaTable:
        """
        kappa(n_i) = -Phi(n^_i) for a homomorphism Phi of the extension with Phi(z) = 1/12.
        """
        if len(phi_values) != GENERATOR_COUNT:
            raise SplittingError(f"expected {GENERATOR_COUNT} generator values, got {len(phi_values)}")
        try:
            values = {i + 1: -Twelfth.from_fraction(v) for i, v in enumerate(phi_values)}
        except NonTwelfthDefect as e:
            raise SplittingError(f"splitting {list(map(str, phi_values))} is not (1/12)Z-valued") from e
        return cls(values, points, tol)

    def __getitem__(self, index: int) -> Twelfth:
        return self.values[index]

    def with_value(self, index: int, value: Twelfth) -> KappaTable:
        values = dict(self.values)
        values[index] = value
        return KappaTable(values, self.points, self.tol)

    def shifted(self, homomorphism: Sequence[Union[Fraction, int]]) -> KappaTable:
        """
        kappa + h for a homomorphism h: Upsilon -> (1/12)Z given on the generators.
        """
        return KappaTable({i: v + Twelfth.from_fraction(homomorphism[i - 1]) for i, v in self.values.items()},
                          self.points, self.tol)

    def normalized(self, kind: str, homogeneous: Sequence[Sequence[Fraction]],
                   free: Optional[Sequence[Sequence[int]]] = None) -> KappaTable:
        """
        Re-pin the two free values; homogeneous spans Hom(Upsilon, Q) on the generators,
        free lists the free generators of the abelianization (needed for CANONICAL).
        """
        from picardmult.presentation import pin_splitting

        phi_values = [-v.as_fraction() for _, v in sorted(self.values.items())]
        return KappaTable.from_splitting(pin_splitting(phi_values, homogeneous, kind, free), self.points, self.tol)

    def kappa(self, w: Word) -> Twelfth:
        ret = lift(w, self.points, self.tol).central
        for i, e in enumerate(w.exponent_vector(), start=1):
            ret = ret + self.values[i] * e
        return ret

    def validate(self, relators: Iterable[Word]) -> Dict[str, bool]:
        """
        kappa vanishes on every relator exactly when it descends to Upsilon.
        """
        return {str(r): self.kappa(r) == 0 for r in relators}

    def to_json(self) -> dict:
        return {f"n{i}": str(v) for i, v in sorted(self.values.items())}


def kappa(table: KappaTable, w: Word) -> Twelfth:
    return table.kappa(w)


def split_discrepancy(table: KappaTable, g: Word, h: Word, splice: Word = EMPTY_WORD) -> Tuple[Twelfth, float]:
    """
    sigma(g, h) - Sigma(g, h) - kappa(gh) + kappa(g) + kappa(h), with kappa(gh)
    evaluated on the representative g splice h, and the sigma rounding residual.
    """
    s, residual = sigma_with_residual(word_matrix(g), word_matrix(h), table.points, table.tol)
    gh = g + splice + h
    ret = Twelfth.from_int(s) - Sigma(g, h) - table.kappa(gh) + table.kappa(g) + table.kappa(h)
    return ret, residual


def verify_split(table: KappaTable, g: Word, h: Word, splice: Word = EMPTY_WORD) -> bool:
    if splice and not word_matrix(splice).is_identity():
        raise RelatorMismatch(f"splice {splice} does not evaluate to the identity")
    return split_discrepancy(table, g, h, splice)[0] == 0


def _tower_ideal(ideal: Union[EisensteinIdeal, EisensteinInt, int]) -> EisensteinIdeal:
    return ideal if isinstance(ideal, EisensteinIdeal) else EisensteinIdeal(EisensteinInt.coerce(ideal))


def multiplier(table: KappaTable, w: Word, tau: BallPoint, ideal: Union[EisensteinIdeal, EisensteinInt, int]) -> complex:
    """
    ell(g, tau) = exp((j~(g, tau) - 2 pi i kappa(g)) / Norm(I)) for g in phi^-1(2 I).
    """
    ideal = _tower_ideal(ideal)
    if not in_upsilon_nc(w, ideal.scaled(2)):
        raise NotInTower(f"phi({w}) = {phi(w)} is not in {ideal.scaled(2)}")
    k = float(table.kappa(w))
    return cmath.exp((j_tilde(word_matrix(w), tau) - TWO_PI_I * k) / ideal.norm())


def close(a: complex, b: complex, tol: float = MULTIPLIER_TOL) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def divisibility_check(g: Word, h: Word, ideal: Union[EisensteinIdeal, EisensteinInt, int]) -> bool:
    """
    Sigma(g, h) is an integer multiple of Norm(I) for g, h in phi^-1(2 I).
    """
    ideal = _tower_ideal(ideal)
    doubled = ideal.scaled(2)
    for w in (g, h):
        if not in_upsilon_nc(w, doubled):
            raise NotInTower(f"phi({w}) = {phi(w)} is not in {doubled}")
    return Sigma(g, h).num % (12 * ideal.norm()) == 0


def cocycle_relation(g: Union[Word, GroupMatrix, np.ndarray], h: Union[Word, GroupMatrix, np.ndarray],
                     k: Union[Word, GroupMatrix, np.ndarray], points: Optional[Points] = None,
                     tol: float = SIGMA_ROUND_TOL) -> bool:
    """
    sigma(g, h) + sigma(gh, k) == sigma(g, hk) + sigma(h, k)
    """
    g, h, k = _as_element(g), _as_element(h), _as_element(k)
    return (sigma(g, h, points, tol) + sigma(product(g, h), k, points, tol)
            == sigma(g, product(h, k), points, tol) + sigma(h, k, points, tol))
