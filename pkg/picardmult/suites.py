'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.


Verification suites, one per command. Each returns a Report.
'''
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, List, Optional, Union

import numpy as np
from yapic import json

from picardmult import __version__
from picardmult.ball_model import (BallPoint, act, base_point, halfplane_margin, j_factor, j_tilde, make_torus,
                                   psi_check, random_ball_point, random_su)
from picardmult.cocycle import (KappaTable, Sigma, close, cocycle_relation, defect, divisibility_check, multiplier,
                                second_point, sigma_torus, sigma_torus_direct, sigma_with_residual, split_discrepancy,
                                word_matrix)
from picardmult.config import RunConfig
from picardmult.defines import (ABELIANIZE, ALL, CANONICAL, COCYCLE_RELATION, EXTENSION, HALFPLANE, KAPPA_TABLE, MULTIPLIER,
                                REFERENCE, SCHEMA_VERSION, SIGMA, SIGMA_EXACT, SOLVE_SPLIT, TOWER, VERIFY_RELATIONS, VERIFY_SPLIT)
from picardmult.eisenstein import EisensteinIdeal, EisensteinInt, Twelfth
from picardmult.exceptions import (BasePointMismatch, InvalidConfig, NonTwelfthDefect, NormalFormError, NotDivisible, NotInBall,
                                   NotInTower, NotUnitModulus, NumericInvariantViolation, ParityViolation, PrecisionLoss,
                                   RelatorMismatch, SplittingError, WordSyntaxError, ZeroDivisor)
from picardmult.group_core import (GENERATORS, N_ZETA_TRANSPOSE, N_ZETA_TRANSPOSE_WORD, Word, in_gamma,
                                   in_upsilon, in_upsilon_nc, phi, sample_word, sample_word_in_nc, tower_index,
                                   verify_word_identity)
from picardmult.presentation import (REFERENCE_PHI, REFERENCE_PHI_CENTER, REFERENCE_RELATIONS, Presentation, abelianization,
                                     build_extension, exponent_matrix, extension_abelianization, hnf, in_row_lattice,
                                     lattice_equal, nonzero_rows, pin_splitting, solve_split, tietze_move)


LOG = logging.getLogger('picardmult')

ABELIANIZATION_HNF = [[3, 0, 0, 3, 0], [0, 0, 3, 0, 0], [0, 0, 0, 0, 3]]
# n^1^3 n^4^3 = z^6, n^3^3 = z^6, n^5^3 = z^6
EXTENSION_HNF = [[3, 0, 0, 3, 0, -6], [0, 0, 3, 0, 0, -6], [0, 0, 0, 0, 3, -6]]
N5_RELATION = (0, 0, 0, 0, 3, -6)
NUMERIC_FAILURES = (PrecisionLoss, BasePointMismatch)
DOMAIN_FAILURES = NUMERIC_FAILURES + (SplittingError, RelatorMismatch, NonTwelfthDefect, NotInBall,
                                      NumericInvariantViolation, NotInTower, NormalFormError, NotDivisible,
                                      ZeroDivisor, ParityViolation)
ZETA_NUMERIC = cmath.exp(2j * math.pi / 3)


def _sorted(obj):
    if isinstance(obj, dict):
        return {str(k): _sorted(obj[k]) for k in sorted(obj, key=str)}
    if isinstance(obj, (list, tuple)):
        return [_sorted(v) for v in obj]
    if isinstance(obj, (Fraction, Twelfth, EisensteinInt)):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


@dataclass
class Report:
    suite: str
    checks: Dict[str, bool] = field(default_factory=dict)
    residuals: Dict[str, float] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    values: Dict[str, object] = field(default_factory=dict)
    config: Dict[str, object] = field(default_factory=dict)
    children: List['Report'] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and all(r.passed for r in self.children)

    def check(self, name: str, ok: bool):
        self.checks[name] = bool(ok)
        if not ok:
            LOG.warning("%s: check %s failed", self.suite, name)

    def residual(self, name: str, value: float):
        self.residuals[name] = max(self.residuals.get(name, 0.0), float(value))

    def to_json(self) -> dict:
        if self.children:
            return _sorted({'schema': SCHEMA_VERSION, 'passed': self.passed,
                            'suites': [r.to_json() for r in self.children]})
        return _sorted({
            'schema': SCHEMA_VERSION,
            'version': __version__,
            'suite': self.suite,
            'passed': self.passed,
            'checks': self.checks,
            'residuals': self.residuals,
            'counts': self.counts,
            'values': self.values,
            'config': self.config,
        })

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def parse_element(text: str) -> Union[Word, complex]:
    """
    't:zeta' or 't:<re>,<im>' for a torus element, anything else in word syntax.
    """
    text = text.strip()
    if not text.startswith('t:'):
        return Word.parse(text)
    arg = text[2:].strip()
    if arg == 'zeta':
        return ZETA_NUMERIC
    try:
        re_part, im_part = arg.split(',')
        return complex(float(re_part), float(im_part))
    except ValueError as e:
        raise WordSyntaxError(f"cannot parse torus element {text!r}") from e


class Context:
    """
    Shared, lazily computed state: the verified presentation, its defects, the
    extension, the splitting and the kappa table.
    """
    def __init__(self, config: RunConfig):
        self.config = config
        self.points = (BallPoint(config.base_point), BallPoint(config.second_point))
        self.tol = config.tolerances.sigma_round

    def rng(self, suite: str) -> np.random.Generator:
        # per-suite streams keep each report independent of which suites ran before
        return np.random.default_rng([self.config.seed, sum(ord(c) for c in suite)])

    def size(self, default: int) -> int:
        return self.config.sample_override or default

    @cached_property
    def bundled(self) -> Presentation:
        return Presentation.bundled()

    @cached_property
    def presentation(self) -> Presentation:
        return self.bundled.verified()

    @cached_property
    def defects(self) -> List[Twelfth]:
        ret = [defect(r, self.points, self.tol) for r in self.presentation.relators]
        for r, d in zip(self.presentation.relators, ret):
            LOG.info("KAPPA: defect of %s is %s", r, d)
        return ret

    @cached_property
    def extension(self):
        return build_extension(self.presentation, self.defects)

    @cached_property
    def split(self):
        return solve_split(self.extension, Fraction(1, 12), self.config.normalization)

    @cached_property
    def table(self) -> KappaTable:
        return KappaTable.from_splitting(self.split.phi, self.points, self.tol)

    def splice(self, rng: np.random.Generator) -> Word:
        """
        A random relator, rotated and possibly inverted.
        """
        relators = self.presentation.relators
        r = relators[int(rng.integers(0, len(relators)))]
        r = r.rotated(int(rng.integers(0, len(r))))
        return r.inverse() if rng.integers(0, 2) else r


def _new_report(suite: str, ctx: Context) -> Report:
    return Report(suite, config=ctx.config.to_json())


def verify_relations(ctx: Context) -> Report:
    report = _new_report(VERIFY_RELATIONS, ctx)
    outcome = ctx.bundled.verify()
    passed = sum(outcome.values())
    LOG.info("REL: %d/%d relators evaluate to the identity", passed, len(outcome))
    report.values['relators'] = outcome
    report.counts['relators'] = len(outcome)
    report.counts['passed'] = passed
    report.check('all_relators_identity', passed == len(outcome))
    report.check('generators_in_upsilon', all(in_upsilon(g) for g in GENERATORS.values()))
    identity = verify_word_identity(Word.parse(N_ZETA_TRANSPOSE_WORD), N_ZETA_TRANSPOSE)
    LOG.info("REL: n(zeta,1)^t = %s holds: %s", N_ZETA_TRANSPOSE_WORD, identity)
    report.values['n_zeta_transpose_word'] = {'word': N_ZETA_TRANSPOSE_WORD, 'holds': identity,
                                              'phi': phi(Word.parse(N_ZETA_TRANSPOSE_WORD)).to_json()}
    return report


def abelianize(ctx: Context) -> Report:
    report = _new_report(ABELIANIZE, ctx)
    p = ctx.presentation
    m = exponent_matrix(p)
    h = nonzero_rows(hnf(m)[0]) if m else []
    structure = abelianization(p)
    report.values.update(structure.to_json())
    report.values['hnf'] = h
    report.counts['relators'] = len(m)
    report.check('hnf_lattice', lattice_equal(h, ABELIANIZATION_HNF))
    report.check('structure', structure.free_rank == 2 and structure.torsion == (3, 3, 3))

    rng = ctx.rng(ABELIANIZE)
    moved = p
    for _ in range(20):
        moved = tietze_move(moved, rng)
    report.check('tietze_invariant', abelianization(moved) == structure)
    return report


def extension(ctx: Context) -> Report:
    report = _new_report(EXTENSION, ctx)
    ext = ctx.extension
    ab = extension_abelianization(ext)
    report.values.update(ext.to_json())
    report.values['abelianization'] = ab.to_json()
    report.counts['generators'] = ext.generator_count
    report.counts['relators'] = ext.relator_count
    report.check('generators', ext.generator_count == 6)
    report.check('relators', ext.relator_count == 18)
    report.check('pure_center_free', ab.pure_center_free)
    report.check('hnf_lattice', lattice_equal(ab.hnf_rows, EXTENSION_HNF))

    report.values['reference_relations'] = {
        ' '.join(map(str, v)): ok for v, ok in zip(REFERENCE_RELATIONS, ab.reference_in_lattice)
    }
    mismatched = [v for v, ok in zip(REFERENCE_RELATIONS, ab.reference_in_lattice) if not ok]
    mismatched += [v for v, ok in zip(ab.hnf_rows, ab.lattice_in_reference) if not ok]
    report.counts['reference_relations'] = len(REFERENCE_RELATIONS)
    report.counts['reference_relations_in_lattice'] = sum(ab.reference_in_lattice)
    report.counts['reference_mismatches'] = len(mismatched)
    report.check('reference_n1_n4_relation', ab.reference_in_lattice[0])
    report.check('reference_n3_relation', ab.reference_in_lattice[1])
    # (n3 n5)^3 has defect 1 and Sigma vanishes on n3, n5, forcing n^5^3 = z^6
    report.check('n5_relation_forced', in_row_lattice(N5_RELATION, ext.rows()))
    report.check('reference_mismatch_only_n5', all(not any(v[:4]) for v in mismatched))
    if mismatched:
        LOG.warning("SNF: extension lattice differs from the reference relations in %s", mismatched)
    return report


def solve_split_suite(ctx: Context) -> Report:
    report = _new_report(SOLVE_SPLIT, ctx)
    split = ctx.split
    rows = ctx.extension.rows()
    report.values['split'] = split.to_json()
    report.counts['homogeneous_dimension'] = len(split.homogeneous)
    report.check('annihilates_relators', split.annihilates(rows))
    report.check('homogeneous_dimension', len(split.homogeneous) == 2)
    report.check('twelfth_valued', all((x * 12).denominator == 1 for x in split.phi))
    if split.normalization == CANONICAL:
        report.check('canonical_vanishes_on_free_generators',
                     all(sum(Fraction(e) * x for e, x in zip(f, split.phi)) == 0 for f in split.free))

    values = REFERENCE_PHI + (REFERENCE_PHI_CENTER,)
    report.check('reference_phi_annihilates_reference_relations',
                 all(sum(Fraction(e) * x for e, x in zip(v, values)) == 0 for v in REFERENCE_RELATIONS))
    missed = [row for row in rows if sum(Fraction(e) * x for e, x in zip(row, values)) != 0]
    report.counts['rows_not_annihilated_by_reference_phi'] = len(missed)
    report.values['reference_phi_annihilates_computed'] = not missed

    pinned = pin_splitting(split.phi, split.homogeneous, REFERENCE, split.free)
    report.values['split_reference_normalization'] = {f"n{i}": str(x) for i, x in enumerate(pinned, start=1)}
    report.values['n5_offset_from_reference'] = str(pinned[4] - REFERENCE_PHI[4])
    report.check('reference_phi_n1_to_n4', tuple(pinned[:4]) == REFERENCE_PHI[:4])
    return report


def kappa_table(ctx: Context) -> Report:
    report = _new_report(KAPPA_TABLE, ctx)
    table = ctx.table
    report.values['kappa'] = table.to_json()
    validated = table.validate(ctx.presentation.relators)
    report.check('vanishes_on_relators', all(validated.values()))

    # pinning kappa(n1) = -1/12, kappa(n2) = 0 leaves n3 and n4 to the relators
    reference = table.normalized(REFERENCE, ctx.split.homogeneous, ctx.split.free)
    report.values['kappa_reference_normalization'] = reference.to_json()
    report.check('reference_normalization_n3', reference[3] == Fraction(-2, 12))
    report.check('reference_normalization_n4', reference[4] == Fraction(-1, 12))
    report.check('reference_vanishes_on_relators', all(reference.validate(ctx.presentation.relators).values()))

    sizes = ctx.config.suites.kappa_invariance
    rng = ctx.rng(KAPPA_TABLE)
    bases, insertions = ctx.size(sizes.base_words), sizes.insertions
    failures = 0
    for _ in range(bases):
        w = sample_word(rng, min(sizes.max_len, ctx.config.max_len))
        k = table.kappa(w)
        for _ in range(insertions):
            at = int(rng.integers(0, len(w) + 1))
            r = ctx.splice(rng)
            if table.kappa(w[:at] + r + w[at:]) != k:
                failures += 1
    report.counts['base_words'] = bases
    report.counts['insertions'] = bases * insertions
    report.counts['failures'] = failures
    report.check('relator_insertion_invariant', failures == 0)
    return report


def verify_split_suite(ctx: Context) -> Report:
    report = _new_report(VERIFY_SPLIT, ctx)
    table = ctx.table
    rng = ctx.rng(VERIFY_SPLIT)
    samples = ctx.size(ctx.config.samples)
    failures = precision = 0
    for _ in range(samples):
        g, h = sample_word(rng, ctx.config.max_len), sample_word(rng, ctx.config.max_len)
        try:
            discrepancy, residual = split_discrepancy(table, g, h, ctx.splice(rng))
        except NUMERIC_FAILURES as e:
            LOG.warning("SIGMA: %s", e)
            precision += 1
            continue
        report.residual('sigma_round', residual)
        if discrepancy != 0:
            failures += 1
    report.counts['pairs'] = samples
    report.counts['failures'] = failures
    report.counts['precision_failures'] = precision
    report.check('coboundary_identity', failures == 0 and precision == 0)
    report.check('sigma_round_residual', report.residuals.get('sigma_round', 0.0) < ctx.tol)

    # kappa(n3) + 1/12 shifts the split identity by the n3-exponent of the splice
    corrupted = table.with_value(3, table[3] + Twelfth(1))
    heisenberg = next(r for r in ctx.presentation.relators if r.exponent_vector()[2] != 0)
    detected = any(split_discrepancy(corrupted, sample_word(rng, 4), sample_word(rng, 4), heisenberg)[0] != 0
                   for _ in range(10))
    report.check('corrupted_table_detected', detected)
    return report


def sigma_suite(ctx: Context) -> Report:
    report = _new_report(SIGMA, ctx)
    if ctx.config.g is not None and ctx.config.h is not None:
        g, h = _sigma_operand(ctx.config.g), _sigma_operand(ctx.config.h)
        try:
            value, residual = sigma_with_residual(g, h, ctx.points, ctx.tol)
        except NUMERIC_FAILURES as e:
            report.values['error'] = str(e)
            report.check('sigma_round_residual', False)
            return report
        report.values['sigma'] = value
        report.residual('sigma_round', residual)
        report.check('sigma_round_residual', residual < ctx.tol)
        return report

    report.values['sigma_t_zeta_t_zeta'] = sigma_torus(ZETA_NUMERIC, ZETA_NUMERIC)
    report.check('sigma_t_zeta_t_zeta', report.values['sigma_t_zeta_t_zeta'] == -1)
    rng = ctx.rng(SIGMA)
    pairs = ctx.size(ctx.config.suites.torus.pairs)
    mismatches = 0
    for _ in range(pairs):
        z, z2 = cmath.exp(1j * rng.uniform(-math.pi, math.pi)), cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        if sigma_torus(z, z2) != sigma_torus_direct(z, z2):
            mismatches += 1
        n, n2 = (int(x) for x in rng.integers(-5, 6, size=2))
        report.residual('psi_additivity', psi_check(z, n, z2, n2))
    report.counts['pairs'] = pairs
    report.counts['mismatches'] = mismatches
    report.check('torus_direct_formula', mismatches == 0)
    report.check('psi_additivity', report.residuals.get('psi_additivity', 0.0) < ctx.config.tolerances.functional)
    return report


def _sigma_operand(text: str):
    element = parse_element(text)
    if isinstance(element, Word):
        return word_matrix(element)
    try:
        return make_torus(element, 2)
    except NotUnitModulus as e:
        raise InvalidConfig(str(e)) from e


def Sigma_suite(ctx: Context) -> Report:
    report = _new_report(SIGMA_EXACT, ctx)
    if ctx.config.g is not None and ctx.config.h is not None:
        g, h = parse_element(ctx.config.g), parse_element(ctx.config.h)
        if not isinstance(g, Word) or not isinstance(h, Word):
            raise InvalidConfig("Sigma is defined on words only")
        report.values['Sigma'] = Sigma(g, h)
        return report

    rng = ctx.rng(SIGMA_EXACT)
    pairs = ctx.size(ctx.config.suites.Sigma.pairs)
    failures = 0
    for _ in range(pairs):
        g1, g2, h = (sample_word(rng, ctx.config.max_len) for _ in range(3))
        if Sigma(g1 + g2, h) != Sigma(g1, h) + Sigma(g2, h) or Sigma(h, g1 + g2) != Sigma(h, g1) + Sigma(h, g2):
            failures += 1
    report.counts['pairs'] = pairs
    report.counts['failures'] = failures
    report.check('biadditive', failures == 0)
    return report


def multiplier_suite(ctx: Context) -> Report:
    report = _new_report(MULTIPLIER, ctx)
    table = ctx.table
    sizes = ctx.config.suites.multiplier
    tol = ctx.config.tolerances.multiplier
    if ctx.config.ideal_given:
        ideals = [ctx.config.ideal]
    else:
        ideals = [EisensteinIdeal.parse(i) for i in sizes.ideals]
    rng = ctx.rng(MULTIPLIER)
    pairs = ctx.size(sizes.pairs)
    max_len = min(sizes.max_len, ctx.config.max_len)
    for ideal in ideals:
        key = f"({ideal.gen.a},{ideal.gen.b})"
        cocycle_failures = power_failures = divisibility_failures = precision = 0
        for _ in range(pairs):
            g, h = sample_word_in_nc(rng, ideal, max_len), sample_word_in_nc(rng, ideal, max_len)
            tau = random_ball_point(rng, 2)
            try:
                lg_h = multiplier(table, g, act(word_matrix(h), tau), ideal)
                lh = multiplier(table, h, tau, ideal)
                lgh = multiplier(table, g + h, tau, ideal)
            except NUMERIC_FAILURES as e:
                LOG.warning("SIGMA: %s", e)
                precision += 1
                continue
            report.residual(f"cocycle{key}", abs(lgh - lg_h * lh) / max(1.0, abs(lgh)))
            if not close(lgh, lg_h * lh, tol):
                cocycle_failures += 1
            j12 = j_factor(word_matrix(g), tau) ** 12
            l12n = multiplier(table, g, tau, ideal) ** (12 * ideal.norm())
            report.residual(f"power{key}", abs(l12n - j12) / max(1.0, abs(j12)))
            if not close(l12n, j12, tol):
                power_failures += 1
            if not divisibility_check(g, h, ideal):
                divisibility_failures += 1
        report.counts[f"pairs{key}"] = pairs
        report.counts[f"precision_failures{key}"] = precision
        report.check(f"multiplier_cocycle{key}", cocycle_failures == 0 and precision == 0)
        report.check(f"power_identity{key}", power_failures == 0)
        report.check(f"divisibility{key}", divisibility_failures == 0)
        report.values[f"tower_index{key}"] = tower_index(ideal)
    return report


def halfplane(ctx: Context) -> Report:
    report = _new_report(HALFPLANE, ctx)
    sizes = ctx.config.suites.halfplane
    tol = ctx.config.tolerances
    rng = ctx.rng(HALFPLANE)
    total = ctx.size(sizes.samples)
    per = max(1, sizes.taus_per_element)
    groups = [('exact', 2)] + [('numeric', d) for d in sizes.dims]
    share = max(1, total // len(groups))
    violations = 0
    min_margin = math.inf
    for kind, d in groups:
        for _ in range(max(1, share // per)):
            if kind == 'exact':
                g, h = word_matrix(sample_word(rng, min(8, ctx.config.max_len))), GENERATORS[int(rng.integers(1, 6))]
            else:
                g, h = random_su(rng, d, tol.matrix), random_su(rng, d, tol.matrix)
            for _ in range(per):
                tau = random_ball_point(rng, d)
                margin = halfplane_margin(g, tau)
                min_margin = min(min_margin, margin)
                if not margin > 0:
                    violations += 1
            # automorphy, branch and action checks on one point per element, relative residuals
            tau = random_ball_point(rng, d)
            gh = g @ h
            htau = act(h, tau)
            j_gh = j_factor(gh, tau)
            report.residual(f"automorphy_{kind}_d{d}",
                            abs(j_gh - j_factor(g, htau) * j_factor(h, tau)) / max(1.0, abs(j_gh)))
            j_g = j_factor(g, tau)
            report.residual(f"branch_{kind}_d{d}", abs(cmath.exp(j_tilde(g, tau)) - j_g) / max(1.0, abs(j_g)))
            lhs, rhs = act(gh, tau).vector, act(g, htau).vector
            report.residual(f"action_{kind}_d{d}",
                            float(np.max(np.abs(lhs - rhs))) / max(1.0, float(np.max(np.abs(lhs)))))
        report.counts[f"samples_{kind}_d{d}"] = max(1, share // per) * per
    report.values['min_margin'] = min_margin
    report.counts['violations'] = violations
    report.check('positive_real_part', violations == 0)
    for name, value in list(report.residuals.items()):
        report.check(name, value < tol.functional)
    return report


def cocycle_relation_suite(ctx: Context) -> Report:
    report = _new_report(COCYCLE_RELATION, ctx)
    sizes = ctx.config.suites.cocycle_relation
    rng = ctx.rng(COCYCLE_RELATION)
    max_len = min(sizes.max_len, ctx.config.max_len)
    failures = precision = 0
    exact = ctx.size(sizes.exact)
    for _ in range(exact):
        g, h, k = (sample_word(rng, max_len) for _ in range(3))
        try:
            if not cocycle_relation(g, h, k, ctx.points, ctx.tol):
                failures += 1
        except NUMERIC_FAILURES as e:
            LOG.warning("SIGMA: %s", e)
            precision += 1
    report.counts['exact_triples'] = exact
    report.counts['exact_failures'] = failures
    report.counts['exact_precision_failures'] = precision
    report.check('exact_cocycle', failures == 0 and precision == 0)

    numeric = ctx.size(sizes.numeric)
    for d in sizes.dims:
        failures = precision = 0
        points = (base_point(d), second_point(d))
        for _ in range(numeric):
            g, h, k = (random_su(rng, d, ctx.config.tolerances.matrix) for _ in range(3))
            try:
                if not cocycle_relation(g, h, k, points, ctx.tol):
                    failures += 1
            except NUMERIC_FAILURES as e:
                LOG.warning("SIGMA: %s", e)
                precision += 1
        report.counts[f"numeric_triples_d{d}"] = numeric
        report.counts[f"numeric_failures_d{d}"] = failures
        report.check(f"numeric_cocycle_d{d}", failures == 0 and precision == 0)
    return report


def tower(ctx: Context) -> Report:
    report = _new_report(TOWER, ctx)
    known = {'1,0': 1, '1,2': 3, '2,0': 4}
    report.check('known_indices', all(tower_index(EisensteinIdeal.parse(k)) == v for k, v in known.items()))
    ideal = ctx.config.ideal
    report.values['ideal'] = ideal.to_json()
    report.values['index'] = tower_index(ideal)
    report.values['index_2I'] = tower_index(ideal.scaled(2))
    rng = ctx.rng(TOWER)
    samples = ctx.size(ctx.config.samples)
    outside = 0
    for _ in range(samples):
        w = sample_word_in_nc(rng, ideal, ctx.config.max_len)
        if not in_upsilon_nc(w, ideal.scaled(2)) or not in_gamma(word_matrix(w)):
            outside += 1
    report.counts['samples'] = samples
    report.check('sampler_in_tower', outside == 0)
    return report


SUITES: Dict[str, Callable[[Context], Report]] = {
    VERIFY_RELATIONS: verify_relations,
    ABELIANIZE: abelianize,
    EXTENSION: extension,
    SOLVE_SPLIT: solve_split_suite,
    KAPPA_TABLE: kappa_table,
    VERIFY_SPLIT: verify_split_suite,
    SIGMA: sigma_suite,
    SIGMA_EXACT: Sigma_suite,
    MULTIPLIER: multiplier_suite,
    HALFPLANE: halfplane,
    COCYCLE_RELATION: cocycle_relation_suite,
    TOWER: tower,
}


def _run_one(name: str, suite: Callable[[Context], Report], ctx: Context) -> Report:
    """
    A domain failure while building the suite's state fails the suite instead of
    escaping to the caller.
    """
    try:
        return suite(ctx)
    except DOMAIN_FAILURES as e:
        LOG.error("CLI: %s aborted by %s: %s", name, type(e).__name__, e)
        report = _new_report(name, ctx)
        report.values['error'] = f"{type(e).__name__}: {e}"
        report.check('completed', False)
        return report


def run_suite(command: str, config: RunConfig, ctx: Optional[Context] = None) -> Report:
    ctx = ctx or Context(config)
    if command == ALL:
        report = Report(ALL, config=config.to_json())
        for name, suite in SUITES.items():
            LOG.info("CLI: running %s", name)
            report.children.append(_run_one(name, suite, ctx))
        return report
    if command not in SUITES:
        raise InvalidConfig(f"unknown command {command!r}")
    return _run_one(command, SUITES[command], ctx)
