'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
from fractions import Fraction

import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from picardmult.defines import CANONICAL, REFERENCE, UPPER
from picardmult.eisenstein import Twelfth
from picardmult.exceptions import NonTwelfthDefect, RelatorMismatch, SplittingError, WordSyntaxError
from picardmult.group_core import Word
from picardmult.presentation import (REFERENCE_RELATIONS, AbelianStructure, Presentation, abelian_structure,
                                     abelianization, build_extension, diagonal, exponent_matrix,
                                     extension_abelianization, free_generators, hnf, in_row_lattice, int_det,
                                     is_twelfth_valued, lattice_equal, matmul, nonzero_rows, pin_splitting, snf,
                                     solve_split, tietze_move)


ABELIANIZATION_HNF = [[3, 0, 0, 3, 0], [0, 0, 3, 0, 0], [0, 0, 0, 0, 3]]


def sympy_invariants(m):
    s = smith_normal_form(Matrix(m), domain=ZZ)
    return sorted(abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0)


def test_bundled():
    p = Presentation.bundled()
    assert p.generator_count == 5
    assert len(p) == 13
    assert all(p.verify().values())
    assert p.verified() == p
    assert p.to_json()['relators'][0] == str(Word.parse('[n1, n3]'))


def test_from_text():
    p = Presentation.from_text("# two relators\n\nn1 n1^-1   # trivially\n[n2, n3]\n")
    assert len(p) == 2
    assert p.relators[0] == Word.parse('n1 n1^-1')

    with pytest.raises(WordSyntaxError):
        Presentation.from_text("n1 n7")
    with pytest.raises(RelatorMismatch):
        Presentation.from_text("n4 n5", generator_count=3)


def test_verified_drops_failing():
    p = Presentation.from_text("[n1, n3]\nn1 n2")
    assert p.verify() == {'n1 n3 n1^-1 n3^-1': True, 'n1 n2': False}
    assert p.verified().relators == (Word.parse('[n1, n3]'),)


def test_exponent_matrix():
    p = Presentation.from_text("(n3 n5)^3\nn3 n2 n1 n2^-1 n3 n1^-1 n3\n[n1, n2]")
    assert exponent_matrix(p) == [[0, 0, 3, 0, 3], [0, 0, 3, 0, 0], [0, 0, 0, 0, 0]]


def test_abelianization_bundled():
    p = Presentation.bundled()
    structure = abelianization(p)
    assert structure == AbelianStructure(2, (3, 3, 3))
    assert structure.to_json() == {'rank': 2, 'torsion': [3, 3, 3]}
    assert str(structure) == 'Z^2 + Z/3 + Z/3 + Z/3'
    assert nonzero_rows(hnf(exponent_matrix(p))[0]) == ABELIANIZATION_HNF


def test_abelianization_tietze_invariant(rng):
    p = Presentation.bundled()
    expected = abelianization(p)
    rows = exponent_matrix(p)
    for _ in range(20):
        p = tietze_move(p, rng)
        assert abelianization(p) == expected
        assert lattice_equal(exponent_matrix(p), rows)


@pytest.mark.parametrize("m, invariants", [
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[6, 0], [0, 4]], [2, 12]),
    ([[0, 0], [0, 0]], []),
    ([[1, 2, 3]], [1]),
])
def test_snf_examples(m, invariants):
    s, u, v = snf(m)
    assert [abs(x) for x in diagonal(s) if x] == invariants
    assert matmul(matmul(u, m), v) == s
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1


def test_snf_against_sympy(rng):
    for _ in range(25):
        rows, cols = (int(x) for x in rng.integers(1, 6, size=2))
        m = rng.integers(-9, 10, size=(rows, cols)).tolist()
        s, _, _ = snf(m)
        d = [x for x in diagonal(s) if x]
        assert all(x > 0 for x in d)
        assert all(b % a == 0 for a, b in zip(d, d[1:]))
        assert d == sympy_invariants(m)


def test_hnf(rng):
    for _ in range(25):
        rows, cols = (int(x) for x in rng.integers(1, 7, size=2))
        m = rng.integers(-9, 10, size=(rows, cols)).tolist()
        h, u = hnf(m)
        assert matmul(u, m) == h
        assert abs(int_det(u)) == 1
        pivots = [next(k for k, e in enumerate(row) if e) for row in nonzero_rows(h)]
        assert pivots == sorted(set(pivots))
        for r, c in enumerate(pivots):
            assert h[r][c] > 0
            assert all(0 <= h[i][c] < h[r][c] for i in range(r))
        # zero rows sink to the bottom
        assert h[:len(pivots)] == nonzero_rows(h)


def test_int_det():
    assert int_det([]) == 1
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    m = np.random.default_rng(3).integers(-5, 6, size=(5, 5))
    assert int_det(m.tolist()) == round(np.linalg.det(m))


def test_row_lattice():
    m = [[2, 0], [0, 3]]
    assert in_row_lattice([4, -3], m)
    assert not in_row_lattice([1, 0], m)
    assert in_row_lattice([0, 0], [])
    assert lattice_equal([[2, 0], [0, 3]], [[2, 3], [0, 3]])
    assert not lattice_equal([[2, 0]], [[1, 0]])


def test_abelian_structure():
    assert abelian_structure([], 3) == AbelianStructure(3)
    assert abelian_structure([[2, 0], [0, 0]], 2) == AbelianStructure(1, (2,))
    assert str(AbelianStructure(0)) == '0'


def test_extension(presentation, defects, extension):
    assert extension.generator_count == 6
    assert extension.relator_count == 18
    rows = extension.rows()
    assert len(rows) == 18
    assert all(len(row) == 6 for row in rows)
    assert rows[-5:] == [[0] * 6] * 5
    assert [row[-1] for row in rows[:13]] == [-d.num for d in defects]
    assert extension.to_json()['relators'] == 18


def test_extension_errors(presentation, defects):
    with pytest.raises(RelatorMismatch):
        build_extension(presentation, defects[:-1])
    with pytest.raises(RelatorMismatch):
        build_extension(Presentation.from_text("n1 n2"), [Twelfth(0)])
    with pytest.raises(NonTwelfthDefect):
        build_extension(Presentation.from_text("[n1, n3]"), [Fraction(1, 12)])


def test_extension_abelianization(extension):
    report = extension_abelianization(extension)
    assert report.pure_center_free
    assert report.structure.free_rank == 3
    assert len(report.reference_in_lattice) == len(REFERENCE_RELATIONS)
    assert report.to_json()['lattice_equal'] == report.lattice_equal
    # the extension lattice projects onto the abelianization lattice of Upsilon
    assert [row[:5] for row in report.hnf_rows] == ABELIANIZATION_HNF


def test_extension_abelianization_self_reference(extension):
    report = extension_abelianization(extension, nonzero_rows(hnf(extension.rows())[0]))
    assert report.lattice_equal


def test_extension_hnf(extension):
    report = extension_abelianization(extension)
    # n^1^3 n^4^3 = z^6, n^3^3 = z^6, n^5^3 = z^6
    assert lattice_equal(report.hnf_rows, [[3, 0, 0, 3, 0, -6], [0, 0, 3, 0, 0, -6], [0, 0, 0, 0, 3, -6]])
    assert report.reference_in_lattice == [True, True, False]
    assert not report.lattice_equal


@pytest.mark.parametrize("normalization, expected", [
    (UPPER, (0, 0, Fraction(2, 12), Fraction(2, 12), Fraction(2, 12))),
    (REFERENCE, (Fraction(1, 12), 0, Fraction(2, 12), Fraction(1, 12), Fraction(2, 12))),
])
def test_solve_split(extension, normalization, expected):
    solution = solve_split(extension, Fraction(1, 12), normalization)
    assert solution.annihilates(extension.rows())
    assert solution.center == Fraction(1, 12)
    assert len(solution.homogeneous) == 2
    assert is_twelfth_valued(solution.phi)
    assert solution.phi == expected
    assert solution.to_json()['normalization'] == normalization


def test_solve_split_canonical(extension):
    solution = solve_split(extension, Fraction(1, 12), CANONICAL)
    assert solution.annihilates(extension.rows())
    assert is_twelfth_valued(solution.phi)
    assert len(solution.free) == 2
    for f in solution.free:
        assert sum(e * x for e, x in zip(f, solution.phi)) == 0
    # Phi(n^3) and Phi(n^5) are fixed by the relators whatever the normalization
    assert solution.phi[2] == solution.phi[4] == Fraction(2, 12)
    assert solution.to_json()['free_generators'] == solution.free


def test_free_generators(presentation):
    free = free_generators(exponent_matrix(presentation), 5)
    assert len(free) == 2
    # the free generators fill the relation lattice up to the torsion (Z/3)^3
    assert abs(int_det(ABELIANIZATION_HNF + free)) == 27
    assert abs(int_det([[2, 0]] + free_generators([[2, 0]], 2))) == 2
    assert free_generators([], 3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert free_generators([[1, 0], [0, 1]], 2) == []


def test_split_homogeneous_space(context):
    for v in context.split.homogeneous:
        assert v[2] == 0 and v[4] == 0
        assert v[0] == -v[3]


def test_solve_split_unconstrained_center():
    p = Presentation.from_text("[n1, n3]")
    ext = build_extension(p, [Twelfth(0)])
    # no relator involves z, so Phi(z) is free
    solution = solve_split(ext, Fraction(1, 12), CANONICAL)
    assert solution.annihilates(ext.rows())


def test_pin_splitting():
    homogeneous = [(Fraction(1), 0, 0, Fraction(-1), 0), (0, Fraction(1), 0, 0, 0)]
    phi = (Fraction(1, 12), Fraction(5, 12), Fraction(1, 6), Fraction(1, 12), 0)
    assert pin_splitting(phi, homogeneous, UPPER) == (0, 0, Fraction(1, 6), Fraction(2, 12), 0)
    free = [(0, 0, 0, 1, 0), (0, 1, 0, 0, 0)]
    assert pin_splitting(phi, homogeneous, CANONICAL, free) == (Fraction(2, 12), 0, Fraction(1, 6), 0, 0)
    # a free generator mixing n1 and n2
    assert pin_splitting(phi, homogeneous, CANONICAL, [(1, 1, 0, 0, 0), (0, 1, 0, 0, 0)]) == \
        (0, 0, Fraction(1, 6), Fraction(2, 12), 0)

    with pytest.raises(SplittingError):
        pin_splitting(phi, homogeneous, CANONICAL)
    with pytest.raises(SplittingError):
        pin_splitting(phi, homogeneous, 'nope')
    with pytest.raises(SplittingError):
        pin_splitting(phi, [], UPPER)
    assert pin_splitting((0, 0, 1, 1, 0), [], UPPER) == (0, 0, 1, 1, 0)


def test_is_twelfth_valued():
    assert is_twelfth_valued([Fraction(1, 12), Fraction(-5, 6), 3])
    assert not is_twelfth_valued([Fraction(1, 24)])
