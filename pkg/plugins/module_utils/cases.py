# -*- coding: utf-8 -*-

# Copyright 2026 The numlab.summing Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Scripted reproduction pipelines.

Each case runs one worked example or one seeded property suite and compares
the outcome with fixed thresholds. A case returns its checks together with
the certificates it produced, so the report can be verified independently.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ansible_collections.numlab.summing.plugins.module_utils import (certify, complexify, ellipsoids, numerics,
                                                                     operators, reports, spaces, summing)
from ansible_collections.numlab.summing.plugins.module_utils.errors import InputError, PreconditionFailed


LOG = logging.getLogger(__name__)

SQRT2 = float(np.sqrt(2))


@dataclass(frozen=True)
class Case:
    name: str
    title: str
    pipeline: Callable
    defaults: dict = field(default_factory=dict)


def _check(name, value, threshold, passed):
    return dict(name=name, value=value, threshold=threshold, passed=bool(passed))


def _fraction(name, hits, trials, threshold=1.0):
    value = hits / trials if trials else 1.0
    return _check(name, '%d/%d' % (hits, trials), threshold, value >= threshold)


# Worked examples

def _ex1(seed, sizes, gap):
    checks, entries = [], {}
    for N in sizes:
        space = spaces.linf(N)
        I = operators.l2_identity_operator(space, spaces.MeasureWeights.uniform(N))
        cert = summing.pi2_certify(I, gap=gap, seed=seed)
        checks.extend([
            _check('l_inf^%d lower' % N, cert.lower, 1 - gap, cert.lower >= 1 - gap),
            _check('l_inf^%d upper' % N, cert.upper, 1 + gap, cert.upper <= 1 + gap),
            _check('l_inf^%d gap' % N, cert.gap, gap, cert.gap <= gap),
        ])
        entries['linf%d' % N] = reports.pi2_entry(I, cert)
    return checks, entries


def _oracle(seed, trials, gap):
    rng = np.random.default_rng(seed)
    inside, converged, widths = 0, 0, []
    for t in range(trials):
        field_ = numerics.COMPLEX if t % 2 else numerics.REAL
        N = int(rng.integers(2, summing.GRID_MAX_POINTS + 1))
        n = int(rng.integers(1, min(N, summing.GRID_MAX_DIM) + 1))
        k = int(rng.integers(1, 3))
        B = rng.standard_normal((N, n))
        if field_ == numerics.COMPLEX:
            B = B + 1j * rng.standard_normal((N, n))
        space = spaces.SupSpace(field_, B, label='trial%d' % t)
        T = operators.random_operator(space, k, rng)
        cert = summing.pi2_certify(T, gap=gap, seed=seed + t)
        grid = summing.pi2_grid(T)
        converged += cert.converged
        inside += cert.lower >= grid.lower - gap and cert.upper <= grid.upper + gap
        widths.append(grid.gap / grid.upper)
        LOG.debug('Trial %d: certificate [%.9g, %.9g], grid [%.9g, %.9g]',
                  t, cert.lower, cert.upper, grid.lower, grid.upper)
    widest = max(widths) if widths else 0.0
    checks = [
        _fraction('certificates converged', converged, trials),
        _fraction('certificates inside the grid bracket', inside, trials),
        _check('widest relative grid bracket', widest, 0.1, widest <= 0.1),
    ]
    return checks, dict(grid_widths=widths)


def _ex22(seed, trials, gap):
    rng = np.random.default_rng(seed)
    checks, entries = [], []
    certified, measured = 0, 0
    worst_slack = np.inf
    for t in range(trials):
        field_ = numerics.COMPLEX if t % 2 else numerics.REAL
        theta = rng.uniform(0, np.pi / 2)
        s = rng.uniform(0, 1)
        a, b, d = s * np.cos(theta), (1 - s) * np.cos(theta), np.sin(theta)
        if field_ == numerics.COMPLEX:
            a, b, d = np.array([a, b, d]) * np.exp(2j * np.pi * rng.uniform(size=3))
        space = spaces.linf(2, field_)
        u = operators.OperatorRep(space, np.array([[a, b], [0, d]]))
        cert = summing.pi2_certify(u, gap=gap, seed=seed + t)
        norm = operators.op_norm(u, gap=gap, seed=seed + t, strict=False)
        if abs(cert.lower - 1) <= 1e-6 and cert.upper <= 1 + 1e-6 and abs(norm.upper - 1) <= 1e-6:
            certified += 1
        lam = abs(a) ** 2 + abs(a * b)
        mu = spaces.MeasureWeights.normalized([lam, 1 - lam])
        _, slack = numerics.psd_check(spaces.l2_gram(space, mu) - u.gram)
        worst_slack = min(worst_slack, slack)
        measured += slack >= -1e-10
        entries.append(reports.pi2_entry(u, cert))
        entries.append(reports.norm_entry(u, norm))
    checks.append(_fraction('pi2 = norm = 1 within 1e-6', certified, trials))
    checks.append(_fraction('closed-form Pietsch measure feasible', measured, trials))
    checks.append(_check('worst measure slack', worst_slack, -1e-10, worst_slack >= -1e-10))
    return checks, dict(trials=entries)


def _ex23_real(seed, gap):
    X = spaces.example_plane(numerics.REAL)
    I = operators.l2_identity_operator(X, spaces.MeasureWeights.uniform(3))
    cert = summing.pi2_certify(I, gap=gap, seed=seed)
    norm = operators.op_norm(I, gap=gap, seed=seed)
    plane = certify.operator_verdict(I, np.eye(2), gap=gap, seed=seed)
    ratio = 1 + plane.margin

    full = spaces.linf(3)
    R = operators.l2_identity_operator(full, spaces.MeasureWeights.uniform(3)).matrix
    C = X.basis
    U, _, _ = np.linalg.svd(R @ C, full_matrices=False)
    u = operators.OperatorRep(full, numerics.adjoint(U) @ R)
    derived = certify.operator_verdict(u, C, gap=gap, seed=seed)
    checks = [
        _check('pi2(I^X) lower', cert.lower, 1 - 1e-6, cert.lower >= 1 - 1e-6),
        _check('pi2(I^X) upper', cert.upper, 1 + 1e-6, cert.upper <= 1 + 1e-6),
        _check('||I^X|| upper', norm.upper, 0.86, norm.upper <= 0.86),
        _check('ratio on the plane', ratio, 1.05, ratio >= 1.05 and plane.refuted),
        _check('derived operator on l_inf^3', derived.status, certify.FAILS, derived.refuted),
    ]
    return checks, dict(pi2=reports.pi2_entry(I, cert), opnorm=reports.norm_entry(I, norm),
                        plane=reports.verdict_entry(X, plane), derived=reports.verdict_entry(full, derived))


def _ex23_complex4(seed, gap, starts):
    space, C, info = certify.example23_complex()
    residual = float(np.max(np.abs(info['square_function'] - 1)))
    deviation, _ = certify.flat_deviation(space, starts=starts, seed=seed)
    I = operators.l2_identity_operator(space, spaces.MeasureWeights.uniform(4))
    verdict = certify.operator_verdict(I, C, gap=gap, seed=seed, variant_square_function=info['variant_square_function'])
    checks = [
        _check('square function residual', residual, 1e-12, residual <= 1e-12),
        _check('no-flat margin', deviation, certify.NO_FLAT_MARGIN, deviation >= certify.NO_FLAT_MARGIN),
        _check('verdict', verdict.status, certify.FAILS, verdict.refuted),
    ]
    return checks, dict(verdict=reports.verdict_entry(space, verdict))


# Real constructions

def _prop31(seed, gap, restarts):
    checks, entries = [], {}
    for name, angles in (('0-60-120', (0, 60, 120)), ('0-90-45', (0, 90, 45))):
        z = [np.array([np.cos(np.radians(t)), np.sin(np.radians(t))]) for t in angles]
        verdict = certify.prop31_refute(*z, gap=gap, restarts=restarts, seed=seed)
        checks.append(_check('angles %s' % name, verdict.margin, 0.0, verdict.refuted and verdict.margin > 0))
        entries[name] = reports.verdict_entry(spaces.l1_signs(3), verdict)
    return checks, entries


def _thm33(seed, gap, restarts):
    checks, entries = [], {}
    for space in (spaces.l1_signs(3), spaces.linf(3)):
        mw = certify.milman_wolfson(space)
        section = certify.hexagon_section(space, gap=gap, restarts=restarts, seed=seed)
        E = ellipsoids.mvee(space)
        decomposition = ellipsoids.contact_points(space, E)
        checks.extend([
            _check('%s contact pairing' % space.label, mw['deviation'], 1e-8, mw['deviation'] <= 1e-8),
            _check('%s hexagon contacts' % space.label, section.contact_count, 6, section.certified),
            _check('%s John weights' % space.label, decomposition.total, 3.0, abs(decomposition.total - 3) <= 1e-6),
            _check('%s John residual' % space.label, decomposition.residual, 1e-6, decomposition.residual <= 1e-6),
        ])
        entries[space.label] = dict(john=reports.john_entry(space, E, decomposition),
                                    hexagon=reports.hexagon_entry(space, section))
    return checks, entries


def _lemma11(seed, restarts):
    checks, entries = [], {}
    for space in (spaces.linf(2), spaces.linf(2, numerics.COMPLEX), spaces.linf(3, numerics.COMPLEX)):
        n = space.dim
        name = '%s %s' % (space.field, space.label)
        homothety = ellipsoids.homothety_check(space)
        profile = max(abs(s - 1 / np.sqrt(n)) for s in homothety.s_numbers)
        bounds = ellipsoids.distance_bounds(space, restarts=restarts, seed=seed)
        checks.extend([
            _check('%s homothety defect' % name, homothety.homothety_defect, 1e-4, homothety.homothety_defect <= 1e-4),
            _check('%s s-number profile' % name, profile, 1e-4, profile <= 1e-4),
            _check('%s distance upper' % name, bounds.upper, np.sqrt(n), abs(bounds.upper - np.sqrt(n)) <= 1e-6),
            _check('%s distance lower' % name, bounds.lower, np.sqrt(n) - 1e-3, bounds.lower >= np.sqrt(n) - 1e-3),
        ])
        entries[name.replace(' ', '_')] = reports.distance_entry(space, bounds)
    return checks, entries


# Complex constructions

def _thm42(seed, resolutions, restarts, gap, k_max):
    checks, ratios, errors = [], [], []
    for resolution in resolutions:
        dual = spaces.dual_embed(spaces.linf(3, numerics.COMPLEX), resolution, max_error=None)
        result = summing.defect_ratio(dual, 2, restarts=restarts, seed=seed, gap=gap)
        ratios.append(result.ratio)
        errors.append(dual.hull.error_bound if dual.hull is not None else 0.0)
        checks.append(_check('complex l_1^3 ratio at %d' % resolution, result.ratio, 1 + 1e-3,
                             result.ratio <= 1 + 1e-3))
    steady = all(b <= a + 1e-4 for a, b in zip(ratios, ratios[1:]))
    checks.append(_check('ratio does not grow with resolution', ratios, 1e-4, steady))
    verdict = certify.check_2sp(spaces.linf(3, numerics.COMPLEX), k_max=k_max, restarts=restarts, seed=seed, gap=gap)
    checks.append(_check('complex l_inf^3 ratio up to k=%d' % k_max, 1 + verdict.margin, 1 + 1e-4,
                         verdict.margin <= 1e-4))
    return checks, dict(discretization_errors=errors, resolutions=list(resolutions), l1_ratios=ratios,
                        linf=reports.verdict_entry(spaces.linf(3, numerics.COMPLEX), verdict))


def _lemma43(seed, trials, grid, radial):
    rng = np.random.default_rng(seed)
    entries, hits = [], 0
    for _ in range(trials):
        lambdas = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        value, point, on_torus = certify.lemma43_max(*lambdas, grid=grid, radial=radial)
        hits += on_torus
        entries.append(reports.lemma43_entry(lambdas, value, point, on_torus))
    return [_fraction('maximum on the torus', hits, trials)], dict(trials=entries)


def _prop44(seed, trials, restarts, gap):
    rng = np.random.default_rng(seed)
    ratios, flats_ok, confirmed, vacuous = [], 0, 0, 0
    worst = None
    for t in range(trials):
        B = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        space = spaces.SupSpace(numerics.COMPLEX, B, label='trial%d' % t)
        result = summing.defect_ratio(space, 2, restarts=restarts, seed=seed + t, gap=gap)
        ratios.append(result.ratio)
        _, (a, b), _ = complexify.annihilator_normal_form(space)
        predicted = len(complexify.normal_form_flats(a, b)) > 0
        found = len(certify.flat_vector_search(space, seed=seed + t)) > 0
        flats_ok += predicted == found
        T = result.witness.operator if result.witness is not None else operators.random_operator(space, 2, rng)
        c, d, alpha, beta = certify.prop44_instance(space, T, restarts=restarts, seed=seed + t)
        outcome = certify.prop45_check(c, d, alpha, beta)
        confirmed += outcome.confirmed
        vacuous += outcome.vacuous
        if worst is None or result.ratio > worst[0]:
            worst = (result.ratio, space, result)
    top = max(ratios) if ratios else 1.0
    checks = [
        _check('worst ratio', top, 1 + 1e-4, top <= 1 + 1e-4),
        _fraction('flats match the circle intersection', flats_ok, trials),
        _fraction('inequality confirmed', confirmed, trials),
        _check('vacuous instances', vacuous, 0, vacuous == 0),
    ]
    results = dict(ratios=ratios)
    if worst is not None and worst[2].witness is not None:
        verdict = certify.Verdict(certify.HOLDS if worst[0] <= 1 + 1e-4 else certify.INCONCLUSIVE, worst[0] - 1,
                                  certify._ratio_witness(2, worst[2].witness), dict(restarts=restarts, seed=seed))
        results['worst'] = reports.verdict_entry(worst[1], verdict)
    return checks, results


def _prop45(seed):
    r = 1 / SQRT2
    c, d = [r, r, 0], [r, -r, 0]
    tight = certify.prop45_check(c, d, r, r)
    scaled = certify.prop45_check(c, d, 1.01 * r, r)
    orthogonal = certify.prop45_check([1, 0, 0], [0, 1, 0], r, r)
    checks = [
        _check('tight instance', tight.status, 'confirmed', tight.confirmed),
        _check('scaled alpha', scaled.status, 'vacuous', scaled.vacuous),
        _check('orthogonal instance', orthogonal.status, 'confirmed', orthogonal.confirmed),
    ]
    results = {name: dict(status=res.status, hypothesis_margin=res.hypothesis_margin, conclusion=res.conclusion)
               for name, res in (('tight', tight), ('scaled', scaled), ('orthogonal', orthogonal))}
    return checks, results


# Codimension-one subspaces and complexifications

def _admissible(rng):
    while True:
        a = rng.uniform(0, 1, 3)
        if np.sum(a) > 1:
            return a


def _prop56(seed, trials, tries, gap):
    rng = np.random.default_rng(seed)
    samples = [np.ones(3)] + [_admissible(rng) for _ in range(trials)]
    found, entries = 0, []
    for i, a in enumerate(samples):
        _, _, verdict = certify.counterexample_56(a, tries=tries, seed=seed + i, gap=gap)
        w = verdict.witnesses
        ok = (verdict.refuted and w.get('square_residual', 1.0) <= 1e-9
              and w.get('flat_deviation', 0.0) >= certify.NO_FLAT_MARGIN)
        found += ok
        entries.append(reports.verdict_entry(spaces.normal_form(a, numerics.COMPLEX), verdict))
    try:
        certify.counterexample_56([1, 0, 0], seed=seed)
        guarded = False
    except PreconditionFailed:
        guarded = True
    checks = [
        _fraction('admissible triples refuted', found, len(samples)),
        _check('inadmissible triple refused', guarded, True, guarded),
    ]
    return checks, dict(trials=entries)


def _prop210(seed, trials, gap, restarts):
    rng = np.random.default_rng(seed)
    overlaps, recognized, controls = 0, 0, 0
    worst = 0.0
    for t in range(trials):
        k = int(rng.integers(2, 5))
        n = int(rng.integers(1, 3))
        space = spaces.SupSpace(numerics.REAL, rng.standard_normal((k, n)), label='trial%d' % t)
        S = operators.OperatorRep(space, rng.standard_normal((2, n)))
        intervals = complexify.complexified_intervals(S, gap=gap, restarts=restarts, seed=seed + t)
        overlaps += intervals['overlap']
        SC = complexify.complexify_operator(S)
        U, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        ok, defect = complexify.is_complexification(operators.left_compose(U, SC))
        worst = max(worst, defect)
        recognized += ok and defect <= 1e-10
        control = operators.random_operator(SC.source, 2, rng)
        ok, defect = complexify.is_complexification(control)
        controls += (not ok) and defect >= 1e-3
    checks = [
        _fraction('certified intervals overlap', overlaps, trials),
        _fraction('rotated complexifications recognized', recognized, trials),
        _check('worst recognition defect', worst, 1e-10, worst <= 1e-10),
        _fraction('random controls rejected', controls, trials, 0.95),
    ]
    return checks, {}


def _prop41(seed, restarts, phases, resolution):
    X = spaces.SupSpace(numerics.COMPLEX, np.array([[1, 0], [0, 1], [0.6, 0.6j]]), label='phase_plane')
    real = complexify.realify(X, phases)
    plane = spaces.subspace(real, np.array([[1, 0], [0, 1], [0, 0], [0, 0]]), label='real_plane')
    bounds = ellipsoids.distance_bounds(plane, restarts=restarts, seed=seed)
    whole = ellipsoids.distance_bounds(X, restarts=restarts, seed=seed, resolution=resolution)
    checks = [
        _check('real plane distance lower', bounds.lower, SQRT2 - 1e-4, bounds.lower >= SQRT2 - 1e-4),
        _check('complex plane distance upper', whole.upper, SQRT2, whole.upper <= SQRT2 + 1e-6),
        _check('complex plane distance lower', whole.lower, SQRT2 - 1e-3, whole.lower >= SQRT2 - 1e-3),
    ]
    return checks, dict(plane=reports.distance_entry(plane, bounds), complex=reports.distance_entry(X, whole),
                        realification_error=complexify.realification_error(phases))


CASES = {case.name: case for case in (
    Case('ex1', 'The identity of uniform l_inf^N into L_2 has pi_2 = 1', _ex1, dict(sizes=(2, 3, 4), gap=1e-8)),
    Case('oracle', 'Certified pi_2 against a brute-force grid on small spaces', _oracle, dict(trials=20, gap=1e-6)),
    Case('ex22', 'Upper triangular maps on l_inf^2 have pi_2 = norm = 1', _ex22, dict(trials=20, gap=1e-6)),
    Case('ex23-real', 'Real example plane: pi_2(I^X) = 1 > ||I^X||', _ex23_real, dict(gap=1e-6)),
    Case('ex23-complex4', 'Complex plane in l_inf^4 without flat vectors', _ex23_complex4,
         dict(gap=1e-6, starts=certify.DEFAULT_STARTS)),
    Case('prop31', 'Three independent images of l_1^3 in l_2^2', _prop31, dict(gap=1e-6, restarts=20)),
    Case('thm33-hexagon', 'Contact pairing, hexagon sections and John weights', _thm33,
         dict(gap=1e-6, restarts=20)),
    Case('lemma11', 'Homothety of John ellipsoids for maximal-distance spaces', _lemma11, dict(restarts=20)),
    Case('thm42-l13', 'Complex l_1^3 and l_inf^3 have the 2-summing property', _thm42,
         dict(resolutions=(64, 128), restarts=200, gap=1e-6, k_max=3)),
    Case('lemma43', 'Bidisk maximum is attained on the torus', _lemma43,
         dict(trials=100, grid=certify.LEMMA_GRID, radial=certify.LEMMA_RADIAL)),
    Case('prop44', 'Two-dim subspaces of complex l_inf^3', _prop44, dict(trials=20, restarts=20, gap=1e-6)),
    Case('prop45', 'Diagonal inequality on tight and vacuous instances', _prop45, {}),
    Case('prop56', 'Three-dim subspaces of complex l_inf^4 without the property', _prop56,
         dict(trials=3, tries=200, gap=1e-6)),
    Case('prop210', 'Complexified operators keep their pi_2 and norm', _prop210,
         dict(trials=10, gap=1e-6, restarts=20)),
    Case('prop41', 'Complex plane whose realification contains l_inf^2', _prop41,
         dict(restarts=20, phases=16, resolution=64)),
)}


def run_case(name, seed=0, **options):
    """Runs a registered case; options override the case defaults and unknown ones are ignored"""
    case = CASES.get(name)
    if case is None:
        raise InputError('Unknown case %s; available: %s' % (name, ', '.join(sorted(CASES))),
                         available=sorted(CASES))
    if options.get('resolution') is not None and 'resolutions' in case.defaults:
        options = dict(options, resolutions=(options['resolution'],))
    params = dict(case.defaults)
    params.update({k: v for k, v in options.items() if k in case.defaults and v is not None})
    LOG.info('Running case %s with %s', name, params)
    checks, results = case.pipeline(seed, **params)
    passed = all(c['passed'] for c in checks)
    LOG.info('Case %s %s', name, 'passed' if passed else 'failed')
    return dict(case=name, title=case.title, passed=passed, checks=checks, results=results,
                options=dict(params, seed=seed))
