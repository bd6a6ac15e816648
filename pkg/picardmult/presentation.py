'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.


Finite presentations, exponent-sum lattices and their Hermite / Smith normal
forms, abelianizations of Upsilon and of its central extension by z, and the
splitting homomorphism Phi of that extension.
'''
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational, zeros

from picardmult.defines import CANONICAL, GENERATOR_COUNT, REFERENCE, UPPER
from picardmult.eisenstein import Twelfth
from picardmult.exceptions import NonTwelfthDefect, NormalFormError, RelatorMismatch, SplittingError
from picardmult.group_core import Word, evaluate


LOG = logging.getLogger('picardmult')

IntegerMatrix = List[List[int]]

# The relations of the extension as stated alongside its presentation:
# n^1^3 n^4^3 = z^6, n^3^3 = z^6, n^5^3 = z^-30
REFERENCE_RELATIONS = (
    (3, 0, 0, 3, 0, -6),
    (0, 0, 3, 0, 0, -6),
    (0, 0, 0, 0, 3, 30),
)
REFERENCE_PHI = (Fraction(1, 12), Fraction(0), Fraction(2, 12), Fraction(1, 12), Fraction(-10, 12))
REFERENCE_PHI_CENTER = Fraction(1, 12)

# generator index -> pinned value of Phi(n^_i); CANONICAL pins Phi to zero on
# the free generators of the abelianization instead, see free_generators
PINS = {
    UPPER: {1: Fraction(0), 2: Fraction(0)},
    REFERENCE: {1: Fraction(1, 12), 2: Fraction(0)},
}


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'relators', tuple(self.relators))
        for r in self.relators:
            for i, _ in r:
                if i > self.generator_count:
                    raise RelatorMismatch(f"relator {r} uses n{i} outside the {self.generator_count} generators")

    @classmethod
    def from_text(cls, text: str, generator_count: int = GENERATOR_COUNT) -> Presentation:
        """
        One relator per line in word syntax; blank lines and '#' comments are skipped.
        """
        relators = []
        for line in text.splitlines():
            line = line.split('#', 1)[0].strip()
            if line:
                relators.append(Word.parse(line))
        return cls(generator_count, tuple(relators))

    @classmethod
    def bundled(cls) -> Presentation:
        return cls.from_text(resources.files('picardmult.data').joinpath('relations.txt').read_text())

    def __len__(self) -> int:
        return len(self.relators)

    def verify(self) -> Dict[str, bool]:
        """
        Per-relator check that the relator evaluates to the identity matrix.
        """
        ret = {}
        for r in self.relators:
            ret[str(r)] = evaluate(r).is_identity()
            if not ret[str(r)]:
                LOG.warning("REL: relator %s does not evaluate to the identity", r)
        return ret

    def verified(self) -> Presentation:
        """
        The presentation restricted to the relators that evaluate to the identity.
        """
        kept = tuple(r for r in self.relators if evaluate(r).is_identity())
        if len(kept) != len(self.relators):
            LOG.warning("REL: excluding %d relators that fail matrix verification", len(self.relators) - len(kept))
        return Presentation(self.generator_count, kept)

    def to_json(self) -> dict:
        return {'generators': self.generator_count, 'relators': [str(r) for r in self.relators]}


def tietze_move(p: Presentation, rng: np.random.Generator) -> Presentation:
    """
    One random move: invert a relator, conjugate one by a generator, or swap two.
    """
    relators = list(p.relators)
    if not relators:
        return p
    move = int(rng.integers(0, 3))
    i = int(rng.integers(0, len(relators)))
    if move == 0:
        relators[i] = relators[i].inverse()
    elif move == 1:
        gen = Word.generator(int(rng.integers(1, p.generator_count + 1)), int(rng.integers(0, 2)) * 2 - 1)
        relators[i] = relators[i].conjugate(gen)
    else:
        j = int(rng.integers(0, len(relators)))
        relators[i], relators[j] = relators[j], relators[i]
    return Presentation(p.generator_count, tuple(relators))


def exponent_matrix(p: Presentation) -> IntegerMatrix:
    ret = []
    for r in p.relators:
        row = [0] * p.generator_count
        for i, e in r:
            row[i - 1] += e
        ret.append(row)
    return ret


def identity_matrix(n: int) -> IntegerMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: IntegerMatrix, b: IntegerMatrix, inner: Optional[int] = None) -> IntegerMatrix:
    inner = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def int_det(m: IntegerMatrix) -> int:
    """
    Bareiss fraction-free elimination.
    """
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
    """
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _row_combine(m: IntegerMatrix, i: int, j: int, x: int, y: int, u: int, v: int):
    """
    (row_i, row_j) <- (x row_i + y row_j, u row_i + v row_j)
    """
    ri, rj = m[i], m[j]
    m[i] = [x * p + y * q for p, q in zip(ri, rj)]
    m[j] = [u * p + v * q for p, q in zip(ri, rj)]


def hnf(m: IntegerMatrix) -> Tuple[IntegerMatrix, IntegerMatrix]:
    """
    Row-style Hermite normal form H with unimodular U, U m = H. Pivots are positive
    and entries above a pivot are reduced into [0, pivot).
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(row) for row in m]
    u = identity_matrix(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                p, q = a[r][c], a[i][c]
                g, x, y = _egcd(p, q)
                for t in (a, u):
                    _row_combine(t, r, i, x, y, -q // g, p // g)
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-e for e in a[r]]
            u[r] = [-e for e in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [e - q * f for e, f in zip(a[i], a[r])]
                u[i] = [e - q * f for e, f in zip(u[i], u[r])]
        r += 1
    if matmul(u, m, rows) != a or abs(int_det(u)) != 1:
        raise NormalFormError("Hermite transform check failed")
    return a, u


def nonzero_rows(m: IntegerMatrix) -> IntegerMatrix:
    return [row for row in m if any(row)]


def snf(m: IntegerMatrix) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """
    Smith normal form S = U m V, diagonal with d_1 | d_2 | ... and U, V unimodular.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    s = [list(row) for row in m]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def col_op(dst: int, src: int, q: int):
        # column dst -= q * column src
        for t in (s, v):
            for row in t:
                row[dst] -= q * row[src]

    def col_swap(i: int, j: int):
        for t in (s, v):
            for row in t:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        s[t], s[i] = s[i], s[t]
        u[t], u[i] = u[i], u[t]
        if j != t:
            col_swap(t, j)
        p = s[t][t]

        for i in range(t + 1, rows):
            q = s[i][t] // p
            if q:
                s[i] = [e - q * f for e, f in zip(s[i], s[t])]
                u[i] = [e - q * f for e, f in zip(u[i], u[t])]
        for j in range(t + 1, cols):
            q = s[t][j] // p
            if q:
                col_op(j, t, q)
        # nonzero remainders are smaller than |p|; pick a new pivot from them
        if any(s[i][t] for i in range(t + 1, rows)) or any(s[t][j] for j in range(t + 1, cols)):
            continue
        bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % p), None)
        if bad is not None:
            s[t] = [e + f for e, f in zip(s[t], s[bad])]
            u[t] = [e + f for e, f in zip(u[t], u[bad])]
            continue
        if p < 0:
            s[t] = [-e for e in s[t]]
            u[t] = [-e for e in u[t]]
        t += 1

    if matmul(matmul(u, m, rows), v, cols) != s or abs(int_det(u)) != 1 or abs(int_det(v)) != 1:
        raise NormalFormError("Smith transform check failed")
    LOG.debug("SNF: %dx%d diagonal %s", rows, cols, diagonal(s))
    return s, u, v


def diagonal(s: IntegerMatrix) -> List[int]:
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


@dataclass(frozen=True)
class AbelianStructure:
    """
    Z^free_rank + Z/t_1 + ... with t_1 | t_2 | ...
    """
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {'rank': self.free_rank, 'torsion': list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return ' + '.join(parts) or '0'


def abelian_structure(m: IntegerMatrix, generator_count: int) -> AbelianStructure:
    """
    Z^generator_count modulo the row lattice of m.
    """
    if not m:
        return AbelianStructure(generator_count)
    s, _, _ = snf(m)
    d = [x for x in diagonal(s) if x]
    return AbelianStructure(generator_count - len(d), tuple(x for x in d if x > 1))


def abelianization(p: Presentation) -> AbelianStructure:
    ret = abelian_structure(exponent_matrix(p), p.generator_count)
    LOG.info("SNF: abelianization %s", ret)
    return ret


def free_generators(m: IntegerMatrix, generator_count: int) -> IntegerMatrix:
    """
    Exponent vectors whose images form a basis of the free part of
    Z^generator_count modulo the row lattice of m.

    With S = U m V the map x -> x V carries the row lattice onto the rows of S,
    so the free part is spanned by the rows of V^-1 past the rank of S.
    """
    if not m:
        return identity_matrix(generator_count)
    s, _, v = snf(m)
    rank = len([x for x in diagonal(s) if x])
    v_inv = Matrix(v).inv()
    return [[int(v_inv[k, i]) for i in range(generator_count)] for k in range(rank, generator_count)]


def in_row_lattice(vector: Sequence[int], m: IntegerMatrix) -> bool:
    """
    vector is an integer combination of the rows of m.
    """
    h = nonzero_rows(hnf(m)[0]) if m else []
    rest = list(vector)
    for row in h:
        c = next(k for k, e in enumerate(row) if e)
        if rest[c] % row[c]:
            return False
        q = rest[c] // row[c]
        rest = [e - q * f for e, f in zip(rest, row)]
    return not any(rest)


def lattice_equal(a: IntegerMatrix, b: IntegerMatrix) -> bool:
    return all(in_row_lattice(row, b) for row in a) and all(in_row_lattice(row, a) for row in b)


@dataclass(frozen=True)
class ExtendedPresentation:
    """
    Generators n^_1..n^_5 and z; each relator r lifts to r = z^(12 defect(r)), and z is central.
    """
    base: Presentation
    defects: Tuple[Twelfth, ...]

    @property
    def generator_count(self) -> int:
        return self.base.generator_count + 1

    def rows(self) -> IntegerMatrix:
        ret = [row + [-d.num] for row, d in zip(exponent_matrix(self.base), self.defects)]
        # [z, n^_i] has zero exponent sum
        ret += [[0] * self.generator_count for _ in range(self.base.generator_count)]
        return ret

    @property
    def relator_count(self) -> int:
        return len(self.base) + self.base.generator_count

    def to_json(self) -> dict:
        return {
            'generators': self.generator_count,
            'relators': self.relator_count,
            'defects': {str(r): str(d) for r, d in zip(self.base.relators, self.defects)},
            'z_exponents': [-d.num for d in self.defects],
        }


def build_extension(p: Presentation, defects: Sequence[Twelfth]) -> ExtendedPresentation:
    if len(defects) != len(p):
        raise RelatorMismatch(f"{len(defects)} defects for {len(p)} relators")
    for r in p.relators:
        if not evaluate(r).is_identity():
            raise RelatorMismatch(f"relator {r} does not evaluate to the identity")
    for d in defects:
        if not isinstance(d, Twelfth):
            raise NonTwelfthDefect(f"defect {d!r} is not a Twelfth")
    return ExtendedPresentation(p, tuple(defects))


@dataclass
class ExtensionReport:
    structure: AbelianStructure
    hnf_rows: IntegerMatrix
    reference_in_lattice: List[bool]
    lattice_in_reference: List[bool]
    pure_center_free: bool

    @property
    def lattice_equal(self) -> bool:
        return all(self.reference_in_lattice) and all(self.lattice_in_reference)

    def to_json(self) -> dict:
        return {
            'structure': self.structure.to_json(),
            'hnf_rows': self.hnf_rows,
            'reference_in_lattice': self.reference_in_lattice,
            'lattice_in_reference': self.lattice_in_reference,
            'lattice_equal': self.lattice_equal,
            'pure_center_free': self.pure_center_free,
        }


def extension_abelianization(ext: ExtendedPresentation,
                             reference: Sequence[Sequence[int]] = REFERENCE_RELATIONS) -> ExtensionReport:
    """
    Abelianization of the extension, compared with a reference set of relation vectors
    as lattices. Mismatches are logged, not raised.
    """
    rows = ext.rows()
    h = nonzero_rows(hnf(rows)[0])
    reference = [list(v) for v in reference]
    ret = ExtensionReport(
        structure=abelian_structure(rows, ext.generator_count),
        hnf_rows=h,
        reference_in_lattice=[in_row_lattice(v, rows) for v in reference],
        lattice_in_reference=[in_row_lattice(v, reference) for v in h],
        # a row (0, ..., 0, k) would make z torsion and rule out a splitting with Phi(z) != 0
        pure_center_free=not any(not any(row[:-1]) for row in h),
    )
    for v, ok in zip(reference, ret.reference_in_lattice):
        if not ok:
            LOG.warning("SNF: reference relation %s is not in the computed lattice", v)
    for v, ok in zip(h, ret.lattice_in_reference):
        if not ok:
            LOG.warning("SNF: computed relation %s is not in the reference lattice", v)
    return ret


def _to_fraction(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


@dataclass
class SplitSolution:
    """
    Phi on n^_1..n^_5 with Phi(z) = center; any element of phi + span(homogeneous) also splits.
    """
    phi: Tuple[Fraction, ...]
    center: Fraction
    homogeneous: List[Tuple[Fraction, ...]] = field(default_factory=list)
    normalization: str = CANONICAL
    free: IntegerMatrix = field(default_factory=list)

    def annihilates(self, rows: Sequence[Sequence[int]]) -> bool:
        values = self.phi + (self.center,)
        return all(sum(Fraction(e) * x for e, x in zip(row, values)) == 0 for row in rows)

    def to_json(self) -> dict:
        return {
            'phi': {f"n{i}": str(x) for i, x in enumerate(self.phi, start=1)},
            'z': str(self.center),
            'homogeneous': [[str(x) for x in v] for v in self.homogeneous],
            'free_generators': self.free,
            'normalization': self.normalization,
        }


def _dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def _constraints(kind: str, length: int, free: Optional[Sequence[Sequence[int]]]) -> List[Tuple[Tuple, Fraction]]:
    """
    (vector, target) pairs with Phi . vector = target.
    """
    if kind == CANONICAL:
        if free is None:
            raise SplittingError("the canonical normalization needs the free generators of the abelianization")
        return [(tuple(f), Fraction(0)) for f in free]
    if kind not in PINS:
        raise SplittingError(f"unknown normalization {kind!r}")
    return [(tuple(int(k == i) for k in range(1, length + 1)), Fraction(target)) for i, target in sorted(PINS[kind].items())]


def pin_splitting(phi_values: Sequence[Fraction], homogeneous: Sequence[Sequence[Fraction]],
                  kind: str = CANONICAL, free: Optional[Sequence[Sequence[int]]] = None) -> Tuple[Fraction, ...]:
    """
    Move phi_values along the homogeneous directions until the normalization holds:
    the generator values PINS[kind], or for CANONICAL zero on each free generator,
    which is zero component along the integer-dual basis of Hom(Upsilon, Z).
    """
    constraints = _constraints(kind, len(phi_values), free)
    if not homogeneous:
        if all(_dot(f, phi_values) == target for f, target in constraints):
            return tuple(Fraction(x) for x in phi_values)
        raise SplittingError(f"no homogeneous freedom to reach normalization {kind!r}")
    if not constraints:
        return tuple(Fraction(x) for x in phi_values)
    a = Matrix([[Rational(_dot(f, v).numerator, _dot(f, v).denominator) for v in homogeneous] for f, _ in constraints])
    deltas = [target - _dot(f, phi_values) for f, target in constraints]
    b = Matrix([Rational(x.numerator, x.denominator) for x in deltas])
    try:
        coeffs, params = a.gauss_jordan_solve(b)
    except ValueError as e:
        raise SplittingError(f"normalization {kind!r} cannot be reached") from e
    coeffs = coeffs.subs({t: 0 for t in params})
    return tuple(
        Fraction(phi_values[k]) + sum(_to_fraction(coeffs[j]) * Fraction(homogeneous[j][k]) for j in range(len(homogeneous)))
        for k in range(len(phi_values))
    )


def solve_split(ext: ExtendedPresentation, center_value: Fraction = Fraction(1, 12),
                normalization: str = CANONICAL) -> SplitSolution:
    """
    Rational Phi on the extension generators with Phi(z) = center_value vanishing on
    every relator row.
    """
    rows = ext.rows()
    n = ext.base.generator_count
    center_value = Fraction(center_value)
    a = Matrix(rows)[:, :n] if rows else zeros(0, n)
    b = Matrix([-Rational(row[n]) * Rational(center_value.numerator, center_value.denominator) for row in rows])
    try:
        solution, params = a.gauss_jordan_solve(b)
    except ValueError as e:
        LOG.error("KAPPA: no splitting with Phi(z) = %s", center_value)
        raise SplittingError(f"no homomorphism with Phi(z) = {center_value} annihilates the relators") from e
    particular = tuple(_to_fraction(x) for x in solution.subs({t: 0 for t in params}))
    homogeneous = [tuple(_to_fraction(x) for x in v) for v in a.nullspace()]
    free = free_generators(exponent_matrix(ext.base), n)
    phi_values = pin_splitting(particular, homogeneous, normalization, free)
    ret = SplitSolution(phi_values, center_value, homogeneous, normalization, free)
    if not ret.annihilates(rows):
        raise SplittingError("normalized splitting no longer annihilates the relators")
    LOG.info("KAPPA: splitting %s normalized %s, homogeneous dimension %d",
             [str(x) for x in phi_values], normalization, len(homogeneous))
    return ret


def is_twelfth_valued(values: Sequence[Fraction]) -> bool:
    return all((Fraction(v) * 12).denominator == 1 for v in values)
