'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
import numpy as np
import pytest

from picardmult.eisenstein import ONE, SQRT_MINUS3, ZERO, ZETA, EisensteinIdeal, EisensteinInt
from picardmult.exceptions import ParityViolation, WordSyntaxError
from picardmult.group_core import (GENERATORS, IDENTITY, J, N_ZETA_TRANSPOSE, N_ZETA_TRANSPOSE_WORD, GroupMatrix,
                                   HeisenbergParam, Word, commutator, evaluate, in_gamma, in_gamma_sqrt3, in_upsilon,
                                   in_upsilon_nc, make_n, make_n_transpose, phi, sample_word, sample_word_in_nc,
                                   tower_index, verify_word_identity)


def E(a, b=0):
    return EisensteinInt(a, b)


def test_make_n():
    assert make_n(HeisenbergParam(ZERO, 2)) == GroupMatrix(((1, 0, SQRT_MINUS3), (0, 1, 0), (0, 0, 1)))
    assert make_n(HeisenbergParam(ONE, 1)) == GroupMatrix(((1, SQRT_MINUS3, E(-1, 1)), (0, 1, SQRT_MINUS3), (0, 0, 1)))
    assert make_n(HeisenbergParam(ZETA, 1)) == GroupMatrix(((1, E(-2, -1), E(-1, 1)), (0, 1, E(1, -1)), (0, 0, 1)))

    with pytest.raises(ParityViolation):
        HeisenbergParam(ONE, 2)


def test_make_n_transpose():
    n11 = make_n(HeisenbergParam(ONE, 1))
    assert make_n_transpose(HeisenbergParam(ONE, 1)) == n11.transpose()
    assert make_n_transpose(HeisenbergParam(ZERO, 2)) == GroupMatrix(((1, 0, 0), (0, 1, 0), (SQRT_MINUS3, 0, 1)))
    assert make_n_transpose(HeisenbergParam(ONE, 1))[2, 0] == E(-1, 1)


@pytest.mark.parametrize("z, x", [(ZERO, 0), (ONE, -1), (ZETA, 3), (E(2, 1), 5), (E(3, -2), -3), (E(4, 4), 6)])
def test_heisenberg_elements(z, x):
    for m in (make_n(HeisenbergParam(z, x)), make_n_transpose(HeisenbergParam(z, x))):
        assert m.det() == 1
        assert m.is_j_unitary()
        assert in_gamma_sqrt3(m)


def test_generators():
    for g in GENERATORS.values():
        assert in_upsilon(g)
        assert g @ g.inverse() == IDENTITY
        assert g.inverse() @ g == IDENTITY


def test_membership():
    assert in_gamma(IDENTITY) and in_gamma_sqrt3(IDENTITY) and in_upsilon(IDENTITY)
    zeta_i = GroupMatrix.scalar(ZETA)
    assert in_gamma(zeta_i)
    assert in_gamma_sqrt3(zeta_i)
    assert not in_upsilon(zeta_i)
    assert J.det() == -1
    assert not in_gamma(J)


def test_evaluate():
    assert evaluate(Word()) == IDENTITY
    assert evaluate(Word(((1, 1), (1, -1)))) == IDENTITY
    assert evaluate(Word.parse('n3 n2 n1 n2^-1 n3 n1^-1 n3')) == IDENTITY
    assert evaluate(Word.parse('n4')) == GENERATORS[1].transpose()
    assert evaluate(Word.parse('n5')) == GENERATORS[3].transpose()


def test_n_zeta_transpose_word():
    w = Word.parse(N_ZETA_TRANSPOSE_WORD)
    assert verify_word_identity(w, N_ZETA_TRANSPOSE)
    assert N_ZETA_TRANSPOSE == GroupMatrix(((1, 0, 0), (E(-2, -1), 1, 0), (E(-1, 1), E(1, -1), 1)))
    # phi(n(z, x)^t) = -conj(z)
    assert phi(w) == E(1, 1)
    assert phi(w) == -ZETA.conj()


def test_phi():
    assert phi(Word.parse('n1 n2')) == E(1, 1)
    assert phi(Word.parse('[n1 n2, n4^3 n5]')) == 0
    assert phi(Word.parse('n4')) == -1
    assert phi(Word()) == 0


def test_parse():
    assert Word.parse('[n1, n3]') == Word(((1, 1), (3, 1), (1, -1), (3, -1)))
    assert Word.parse('(n3 n5)^3').exponent_vector() == (0, 0, 3, 0, 3)
    assert Word.parse('n3^{-2}') == Word(((3, -1), (3, -1)))
    assert Word.parse('(n1 n2)^-1') == Word(((2, -1), (1, -1)))
    assert Word.parse('  ') == Word()
    assert str(Word.parse(N_ZETA_TRANSPOSE_WORD)) == N_ZETA_TRANSPOSE_WORD
    assert commutator(Word.parse('n1'), Word.parse('n2')) == Word.parse('n1 n2 n1^-1 n2^-1')


@pytest.mark.parametrize("text", ['n6', 'n1^0', 'n1 )', 'x1', '[n1 n2]', 'n2^', '(n1'])
def test_parse_errors(text):
    with pytest.raises(WordSyntaxError):
        Word.parse(text)


def test_word_operations(rng):
    for _ in range(20):
        u, v = sample_word(rng, 10), sample_word(rng, 10)
        assert evaluate(u + v) == evaluate(u) @ evaluate(v)
        assert evaluate(u.inverse()) == evaluate(u).inverse()
        assert evaluate((u + u.inverse() + v).reduced()) == evaluate(v)
        assert phi(u + v) == phi(u) + phi(v)
        assert phi((u + v.inverse() + v).reduced()) == phi(u)
        assert evaluate(u.rotated(3)) == evaluate(u[:3 % len(u)]).inverse() @ evaluate(u) @ evaluate(u[:3 % len(u)])


def test_in_upsilon_nc():
    two = EisensteinIdeal(ONE).scaled(2)
    assert in_upsilon_nc(Word.parse('n1^2'), two)
    assert not in_upsilon_nc(Word.parse('n1'), two)
    assert in_upsilon_nc(Word.parse('[n2, n4]'), EisensteinIdeal(E(7, 3)))


@pytest.mark.parametrize("gen, index", [(ONE, 1), (SQRT_MINUS3, 3), (E(2), 4), (E(3, 1), 7)])
def test_tower_index(gen, index):
    assert tower_index(EisensteinIdeal(gen)) == index


def test_sample_word():
    a = sample_word(np.random.default_rng(5), 12)
    b = sample_word(np.random.default_rng(5), 12)
    assert a == b
    assert 1 <= len(a) <= 12

    with pytest.raises(ValueError):
        sample_word(np.random.default_rng(5), 0)


def test_sampled_words_in_group(rng):
    for _ in range(20):
        m = evaluate(sample_word(rng, 12))
        assert m.det() == 1
        assert m.is_j_unitary()
        assert in_upsilon(m)


@pytest.mark.parametrize("gen", [ONE, SQRT_MINUS3, E(2)])
def test_sample_word_in_nc(rng, gen):
    ideal = EisensteinIdeal(gen)
    for _ in range(20):
        w = sample_word_in_nc(rng, ideal, 8)
        assert in_upsilon_nc(w, ideal.scaled(2))


def test_matrix_json():
    m = GENERATORS[2]
    assert GroupMatrix.from_json(m.to_json()) == m
    assert m.to_json()[0][1] == [-2, -1]
    assert np.allclose(m.to_numeric(), np.array([[complex(e) for e in row] for row in m.entries]))
