'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.


The ball model H = {tau in C^d : 2 Re(tau_1) + |tau_2|^2 + ... + |tau_d|^2 < 0},
the action of SU(d,1) on it, the automorphy factor j(g, tau) = C tau + D and
its branch logarithm.
'''
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.linalg import expm

from picardmult.defines import BASE_POINT, MATRIX_TOL, UNIT_CIRCLE_TOL, ZERO_J_TOL
from picardmult.eisenstein import EisensteinInt
from picardmult.exceptions import NotInBall, NotUnitModulus, NumericInvariantViolation
from picardmult.group_core import GroupMatrix, Word, evaluate


LOG = logging.getLogger('picardmult')

TWO_PI_I = 2j * math.pi

Element = Union[GroupMatrix, Word, np.ndarray]


@dataclass(frozen=True)
class BallPoint:
    tau: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, 'tau', tuple(complex(t) for t in self.tau))

    @classmethod
    def from_json(cls, data) -> BallPoint:
        return cls(tuple(complex(re, im) for re, im in data))

    def to_json(self) -> list:
        return [[t.real, t.imag] for t in self.tau]

    @property
    def dim(self) -> int:
        return len(self.tau)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.tau, dtype=complex)

    def defect(self) -> float:
        """
        <(tau, 1), (tau, 1)>; negative exactly on H.
        """
        return 2 * self.tau[0].real + sum(abs(t) ** 2 for t in self.tau[1:])

    def in_ball(self, tol: float = 0.0) -> bool:
        scale = max(1.0, sum(abs(t) ** 2 for t in self.tau))
        return self.defect() < tol * scale


def base_point(d: int = 2) -> BallPoint:
    return BallPoint((BASE_POINT[0],) + (0j,) * (d - 1))


def J_matrix(d: int) -> np.ndarray:
    """
    [[0, 0, 1], [0, I_{d-1}, 0], [1, 0, 0]] of size d + 1.
    """
    ret = np.zeros((d + 1, d + 1), dtype=complex)
    ret[0, d] = ret[d, 0] = 1
    for i in range(1, d):
        ret[i, i] = 1
    return ret


def to_numeric(g: Element) -> np.ndarray:
    """
    Exact elements embed through zeta -> exp(2 pi i / 3).
    """
    if isinstance(g, Word):
        return evaluate(g).to_numeric()
    if isinstance(g, GroupMatrix):
        return g.to_numeric()
    return np.asarray(g, dtype=complex)


def matrix_to_json(g: Element) -> list:
    return [[[e.real, e.imag] for e in row] for row in to_numeric(g)]


def numeric_residual(g: Element) -> float:
    m = to_numeric(g)
    d = m.shape[0] - 1
    J = J_matrix(d)
    return max(float(np.max(np.abs(m.conj().T @ J @ m - J))), abs(np.linalg.det(m) - 1))


def _point(tau: Union[BallPoint, Sequence[complex]]) -> BallPoint:
    return tau if isinstance(tau, BallPoint) else BallPoint(tuple(tau))


def j_factor(g: Element, tau: Union[BallPoint, Sequence[complex]]) -> complex:
    m = to_numeric(g)
    tau = _point(tau)
    d = tau.dim
    if m.shape != (d + 1, d + 1):
        raise ValueError(f"matrix of shape {m.shape} does not act on C^{d}")
    return complex(m[d, :d] @ tau.vector + m[d, d])


def act(g: Element, tau: Union[BallPoint, Sequence[complex]], tol: float = MATRIX_TOL) -> BallPoint:
    """
    g * tau = (A tau + B) / (C tau + D) for the block form g = [[A, B], [C, D]].
    """
    m = to_numeric(g)
    tau = _point(tau)
    d = tau.dim
    j = j_factor(m, tau)
    if abs(j) < ZERO_J_TOL:
        raise NumericInvariantViolation(f"|j(g, tau)| = {abs(j)} vanishes at tau = {tau.tau}")
    ret = BallPoint(tuple((m[:d, :d] @ tau.vector + m[:d, d]) / j))
    if not ret.in_ball(tol):
        raise NotInBall(f"g * tau = {ret.tau} left the ball, defect {ret.defect()}")
    return ret


def X(g: Element) -> Union[EisensteinInt, complex]:
    """
    -g[d, 0] if nonzero, else g[d, d]. Exact on exact input.
    """
    if isinstance(g, Word):
        g = evaluate(g)
    if isinstance(g, GroupMatrix):
        return -g[2, 0] if g[2, 0] else g[2, 2]
    m = np.asarray(g, dtype=complex)
    d = m.shape[0] - 1
    return complex(-m[d, 0]) if m[d, 0] != 0 else complex(m[d, d])


def plog(z: complex) -> complex:
    """
    Principal logarithm with imaginary part in (-pi, pi].
    """
    z = complex(z)
    # a signed zero imaginary part would put the negative real axis at -pi
    return cmath.log(complex(z.real, z.imag + 0.0))


def j_tilde(g: Element, tau: Union[BallPoint, Sequence[complex]]) -> complex:
    """
    log(j / X) + log(X); j / X lies in the right half-plane, so the first term
    is continuous in tau.
    """
    x = complex(X(g))
    return plog(j_factor(g, tau) / x) + plog(x)


def halfplane_margin(g: Element, tau: Union[BallPoint, Sequence[complex]]) -> float:
    return (j_factor(g, tau) / complex(X(g))).real


def sigma_raw(g: Element, h: Element, tau: Union[BallPoint, Sequence[complex]]) -> float:
    """
    (1 / 2 pi i) (j~(gh, tau) - j~(g, h tau) - j~(h, tau)), before rounding.
    """
    tau = _point(tau)
    value = j_tilde(product(g, h), tau) - j_tilde(g, act(h, tau)) - j_tilde(h, tau)
    return (value / TWO_PI_I).real


def _exact(g: Element) -> Union[GroupMatrix, None]:
    if isinstance(g, Word):
        return evaluate(g)
    if isinstance(g, GroupMatrix):
        return g
    return None


def product(g: Element, h: Element) -> Element:
    """
    gh, exact whenever both factors are; X(gh) then vanishes-or-not exactly.
    """
    eg, eh = _exact(g), _exact(h)
    if eg is not None and eh is not None:
        return eg @ eh
    return to_numeric(g) @ to_numeric(h)


def random_su(rng: np.random.Generator, d: int, tol: float = MATRIX_TOL) -> np.ndarray:
    """
    exp(M) for a random M in su(d, 1): M = J K with K anti-Hermitian, trace removed,
    entries scaled into the unit disc.
    """
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    n = d + 1
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    k = (a - a.conj().T) / 2
    m = J_matrix(d) @ k
    m -= np.trace(m) / n * np.eye(n)
    m /= max(1.0, float(np.max(np.abs(m))))
    ret = expm(m)
    residual = numeric_residual(ret)
    if residual > tol:
        raise NumericInvariantViolation(f"exp(M) is off SU({d},1) by {residual}")
    return ret


def random_ball_point(rng: np.random.Generator, d: int = 2) -> BallPoint:
    rest = 0.5 * (rng.normal(size=d - 1) + 1j * rng.normal(size=d - 1))
    re = -float(np.sum(np.abs(rest) ** 2)) / 2 - 0.1 - float(rng.exponential(1.0))
    return BallPoint((complex(re, float(rng.normal())),) + tuple(complex(t) for t in rest))


def make_torus(z: complex, d: int = 2) -> np.ndarray:
    """
    t_z = diag(z, conj(z)^2, I_{d-2}, z).
    """
    z = complex(z)
    if abs(abs(z) - 1) > UNIT_CIRCLE_TOL:
        raise NotUnitModulus(f"|z| = {abs(z)} for torus parameter {z}")
    if d < 2:
        raise ValueError(f"the torus needs d >= 2, got {d}")
    return np.diag([z, z.conjugate() ** 2] + [1] * (d - 2) + [z]).astype(complex)


def psi(z: complex, n: int) -> float:
    """
    Psi(t_z, n) = log(z) / (2 pi i) - n on the cover of the torus.
    """
    return (plog(z) / TWO_PI_I).real - n


def psi_check(z: complex, n: int, z2: complex, n2: int, d: int = 2) -> float:
    """
    |Psi((t_z, n)(t_z2, n2)) - Psi(t_z, n) - Psi(t_z2, n2)|, the cover product being
    (g, n)(h, m) = (gh, n + m + sigma(g, h)).
    """
    t, t2 = make_torus(z, d), make_torus(z2, d)
    s = round(sigma_raw(t, t2, base_point(d)))
    zz = complex(z) * complex(z2)
    return abs(psi(zz / abs(zz), n + n2 + s) - psi(z, n) - psi(z2, n2))
