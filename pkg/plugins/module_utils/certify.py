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
Decision procedures and constructions around the 2-summing property.

Verdicts never claim that the property holds: a search that stays within
the margin reports holds-empirically, and only a ratio certified beyond ten
times the certificate gaps reports fails-certified.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import linalg, optimize

from ansible_collections.numlab.summing.plugins.module_utils import (complexify, ellipsoids, numerics, operators,
                                                                     spaces, summing)
from ansible_collections.numlab.summing.plugins.module_utils.errors import (ContractViolation, PreconditionFailed,
                                                                            ResolutionRefused)


LOG = logging.getLogger(__name__)

HOLDS = 'holds-empirically'
FAILS = 'fails-certified'
INCONCLUSIVE = 'inconclusive'

REFUTED = 'refuted'
NOT_REFUTED = 'not-refuted'

HOLDS_MARGIN = 1e-4
FLAT_TOL = 1e-9
NO_FLAT_MARGIN = 1e-4
CRITERION_MARGIN = 1e-6
FEASIBILITY_TOL = 1e-6
PAIRING_TOL = 1e-6
UNIT_TOL = 1e-6
DEFAULT_STARTS = 64
POLISHED_STARTS = 8
CANDIDATE_COMBOS = 5000
LEMMA_GRID = 128
LEMMA_RADIAL = 32
PROP45_GRID = 64
TORUS_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Verdict:
    status: str
    margin: float
    witnesses: dict = field(default_factory=dict)
    budget: dict = field(default_factory=dict)

    @property
    def refuted(self):
        return self.status == FAILS


@dataclass(frozen=True, eq=False)
class FlatVector:
    coefficients: np.ndarray
    moduli: np.ndarray
    deviation: float

    @classmethod
    def of(cls, space, c):
        c = np.asarray(c)
        c = c / space.norm(c)
        moduli = np.abs(space.basis @ c)
        return cls(c, moduli, float(np.max(np.abs(moduli - 1))))

    @property
    def flat(self):
        return self.deviation <= FLAT_TOL


@dataclass(frozen=True, eq=False)
class CriterionResult:
    refuted: bool
    support: Optional[tuple]
    vectors: Optional[np.ndarray]
    margin: float
    status: str
    budget: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class HexagonSection:
    outside: np.ndarray
    inside: np.ndarray
    signs: np.ndarray
    basis: np.ndarray
    section_form: np.ndarray
    contact_count: int
    pairing_deviation: float
    dual_certificate: dict = field(default_factory=dict)

    @property
    def certified(self):
        return self.contact_count >= 6


@dataclass(frozen=True)
class Prop45Result:
    status: str
    hypothesis_margin: float
    conclusion: float

    @property
    def vacuous(self):
        return self.status == 'vacuous'

    @property
    def confirmed(self):
        return self.status == 'confirmed'


@dataclass(frozen=True, eq=False)
class NormalForm:
    a: np.ndarray
    order: list
    phases: np.ndarray
    blocks: list
    space: spaces.SupSpace


# Decision procedure

def _ratio_witness(k, cand):
    return dict(k=k, origin=cand.origin, operator=cand.operator.matrix, witness=cand.witness.vectors,
                pi2_lower=cand.pi2_lower, norm_upper=cand.norm.upper, norm_lower=cand.norm.lower,
                norm_witness=cand.norm.witness, norm_method=cand.norm.method)


def check_2sp(space, k_max=2, restarts=200, seed=0, gap=summing.DEFAULT_GAP, subsets=summing.MAX_SUBSETS):
    """Runs defect_ratio for k = 1..k_max and turns the best ratio into a verdict"""
    if k_max < 1 or k_max > space.dim:
        raise ContractViolation('k_max must lie between 1 and the dimension', k_max=k_max, dim=space.dim)
    budget = dict(k_max=k_max, restarts=restarts, seed=seed, gap=gap, subsets=subsets)
    best, best_k = None, 0
    for k in range(1, k_max + 1):
        result = summing.defect_ratio(space, k, restarts=restarts, seed=seed, gap=gap, subsets=subsets)
        if summing.refutes(result):
            LOG.info('2-summing property refuted at k=%d with ratio %.12g', k, result.ratio)
            return Verdict(FAILS, result.ratio - 1, _ratio_witness(k, result.witness), budget)
        if best is None or result.ratio > best.ratio:
            best, best_k = result, k
    status = HOLDS if best.ratio <= 1 + HOLDS_MARGIN else INCONCLUSIVE
    witnesses = _ratio_witness(best_k, best.witness) if best.witness is not None else {}
    return Verdict(status, best.ratio - 1, witnesses, budget)


# Unimodular searches on the sphere

def _candidates(space, P, extra=()):
    """Starting coefficient vectors, in the coordinates of the columns of P"""
    n = space.dim
    pool = [np.eye(n, dtype=space.dtype)]
    if space.hull is not None:
        pool.append(np.asarray(space.hull.points).T.astype(space.dtype))
    for block in extra:
        pool.append(np.asarray(block, dtype=space.dtype).reshape(n, -1))
    sub = space.basis @ P
    if spaces._binomial(sub.shape[0], sub.shape[1]) <= CANDIDATE_COMBOS:
        try:
            ext = spaces.extreme_points(spaces.SupSpace(space.field, sub), resolution=16)
            pool.append(P @ ext.points.T)
        except (PreconditionFailed, ContractViolation, ResolutionRefused):
            pass
    C = numerics.adjoint(P) @ np.hstack(pool)
    keep = np.linalg.norm(C, axis=0) > 1e-9
    return C[:, keep]


def _unimodularity(values, support):
    top = np.max(np.abs(values), axis=0)
    low = np.min(np.abs(values[list(support)]), axis=0)
    return np.where(top > 0, low / np.where(top > 0, top, 1.0), 0.0)


def _unimodular_max(space, support, P=None, starts=DEFAULT_STARTS, seed=0, extra=()):
    """
    max of min_(k in support) |x(k)| over unit vectors x = BPc. Returns
    (value, coefficients in the space's basis).
    """
    n = space.dim
    P = np.eye(n, dtype=space.dtype) if P is None else np.asarray(P, dtype=space.dtype)
    r = P.shape[1]
    B = space.basis @ P
    cplx = space.is_complex
    rng = np.random.default_rng(seed)
    C = _candidates(space, P, extra)
    R = rng.standard_normal((r, starts))
    if cplx:
        R = R + 1j * rng.standard_normal((r, starts))
    C = np.hstack([C, R])
    scores = _unimodularity(B @ C, support)
    order = np.argsort(-scores, kind='stable')
    best = float(scores[order[0]])
    best_c = C[:, order[0]]

    def f(x):
        c = x[:r] + 1j * x[r:] if cplx else x
        return -float(_unimodularity((B @ c)[:, None], support)[0])

    for j in order[:POLISHED_STARTS]:
        if best >= 1 - 1e-12:
            break
        c0 = C[:, j]
        x0 = np.concatenate([c0.real, c0.imag]) if cplx else c0.real
        res = optimize.minimize(f, x0, method='Nelder-Mead',
                                options=dict(xatol=1e-12, fatol=1e-14, maxiter=400 * x0.size))
        if -res.fun > best:
            best = float(-res.fun)
            best_c = res.x[:r] + 1j * res.x[r:] if cplx else res.x
    c = P @ best_c
    return best, c / space.norm(c)


def flat_deviation(space, starts=DEFAULT_STARTS, seed=0):
    """Smallest deviation from flatness over the unit sphere found by the multistart search"""
    value, c = _unimodular_max(space, range(space.ambient), starts=starts, seed=seed)
    return 1 - value, c


def _closed_form_flats(space):
    order, (a, b), C = complexify.annihilator_normal_form(space)
    found = []
    for psi in complexify.normal_form_flats(a, b):
        found.append(FlatVector.of(space, C @ np.array([1.0, -psi])))
    return found


def flat_vector_search(space, starts=DEFAULT_STARTS, seed=0):
    """
    Flat unit vectors of the space, up to unimodular factors. Two-dim
    subspaces of complex l_inf^3 are solved in closed form; everything else
    goes through the multistart deviation search.
    """
    if space.is_complex and space.dim == 2 and space.ambient == 3:
        found = [f for f in _closed_form_flats(space) if f.flat]
        if found:
            return found
    found = []
    for attempt in range(3):
        deviation, c = flat_deviation(space, starts=starts, seed=seed + attempt)
        if deviation > FLAT_TOL:
            continue
        cand = FlatVector.of(space, c)
        rep = complexify_rep(cand.coefficients)
        if all(np.max(np.abs(complexify_rep(f.coefficients) - rep)) > 1e-6 for f in found):
            found.append(cand)
    LOG.debug('Flat vector search on %r: %d found', space, len(found))
    return found


def complexify_rep(c):
    """Representative of c up to a unimodular factor"""
    c = np.asarray(c)
    j = int(np.argmax(np.abs(c) > 1e-9))
    return c * np.conj(c[j]) / abs(c[j])


# Support criteria

def _feasible_system(space, support, rank, tries, seed):
    for attempt in range(tries):
        system, residual = summing.square_function_system(space, support, rank=rank, seed=seed + attempt)
        if residual <= FEASIBILITY_TOL:
            return system
    return None


def criterion_27a(space, subsets=summing.MAX_SUBSETS, starts=DEFAULT_STARTS, seed=0, tries=3):
    """
    A 2-dim space fails the property when some support K0 carries a square
    function 1 on K0 and <= 1 elsewhere, while no unit vector is unimodular
    on K0. Supports are tried largest first.
    """
    if space.dim != 2:
        raise PreconditionFailed('The support criterion without restriction applies to 2-dim spaces', dim=space.dim)
    budget = dict(subsets=subsets, starts=starts, seed=seed, tries=tries)
    margin = 0.0
    for K0 in summing.subsets_by_size(space.ambient, subsets):
        system = _feasible_system(space, K0, 2, tries, seed)
        if system is None:
            continue
        value, _ = _unimodular_max(space, K0, starts=starts, seed=seed, extra=(system.vectors,))
        if value <= 1 - CRITERION_MARGIN:
            LOG.info('Support criterion refutes on %s with margin %.3g', K0, 1 - value)
            return CriterionResult(True, K0, system.vectors, 1 - value, REFUTED, budget)
        margin = max(margin, 1 - value)
    return CriterionResult(False, None, None, margin, NOT_REFUTED if margin < 1e-12 else INCONCLUSIVE, budget)


def _restricted_span(space, support, vectors):
    """Coefficients c whose restriction to the support lies in the span of the restricted vectors"""
    BK = space.basis[list(support)]
    V = BK @ vectors
    U, s, _ = np.linalg.svd(V, full_matrices=False)
    U = U[:, s > 1e-10 * max(s[0], 1e-300)] if s.size else U[:, :0]
    M = BK - U @ (numerics.adjoint(U) @ BK)
    _, sv, Vh = np.linalg.svd(M)
    sv = np.concatenate([sv, np.zeros(Vh.shape[0] - sv.size)])
    scale = max(float(np.max(np.abs(BK))), 1.0)
    return numerics.adjoint(Vh[sv <= 1e-10 * scale])


def criterion_27b(space, subsets=summing.MAX_SUBSETS, starts=DEFAULT_STARTS, seed=0, tries=3):
    """
    Refutes the property through a support K0 and a square-function system
    x_1..x_r such that no x unimodular on K0 and of norm one restricts into
    the span of the restricted x_j. Only margins of at least 1e-6 count.
    """
    budget = dict(subsets=subsets, starts=starts, seed=seed, tries=tries)
    if space.dim == 1:
        return CriterionResult(False, None, None, 0.0, NOT_REFUTED, budget)
    margin = 0.0
    for K0 in summing.subsets_by_size(space.ambient, subsets):
        for rank in range(2, space.dim + 1):
            system = _feasible_system(space, K0, rank, tries, seed)
            if system is None:
                continue
            P = _restricted_span(space, K0, system.vectors)
            if P.shape[1] == 0:
                continue
            value, _ = _unimodular_max(space, K0, P=P, starts=starts, seed=seed, extra=(system.vectors,))
            if value <= 1 - CRITERION_MARGIN:
                LOG.info('Restricted support criterion refutes on %s (rank %d) with margin %.3g', K0, rank, 1 - value)
                return CriterionResult(True, K0, system.vectors, 1 - value, REFUTED, budget)
            margin = max(margin, 1 - value)
    return CriterionResult(False, None, None, margin, NOT_REFUTED if margin < 1e-12 else INCONCLUSIVE, budget)


# Calculus reformulations

def _lemma43_f(l1, l2, l3, z1, z2):
    inner = np.abs(1 + l1 * z1 + l2 * z2 + l3 * z1 * np.conj(z2))
    radial = abs(l3) * np.sqrt(np.maximum(1 - np.abs(z1) ** 2, 0)) * np.sqrt(np.maximum(1 - np.abs(z2) ** 2, 0))
    return inner + radial


def _best_z1(l1, l3, z2):
    """Maximizer in z1 for fixed z2: phase aligned with 1 + l2 z2, radius |B| / (|B|^2 + C^2)^1/2"""
    B = l1 + l3 * np.conj(z2)
    C = abs(l3) * np.sqrt(np.maximum(1 - np.abs(z2) ** 2, 0))
    norm = np.sqrt(np.abs(B) ** 2 + C ** 2)
    return np.where(norm > 0, np.abs(B) / np.where(norm > 0, norm, 1.0), 0.0), B


def lemma43_max(l1, l2, l3, grid=LEMMA_GRID, radial=LEMMA_RADIAL):
    """
    Maximizes |1 + l1 z1 + l2 z2 + l3 z1 conj(z2)| + |l3| (1-|z1|^2)^1/2 (1-|z2|^2)^1/2
    over the closed bidisk. Returns (value, (z1, z2), on_torus) where
    on_torus tells whether a torus point reaches the maximum within 1e-8.
    """
    l1, l2, l3 = complex(l1), complex(l2), complex(l3)
    phases = np.exp(2j * np.pi * np.arange(grid) / grid)
    Z1, Z2 = np.meshgrid(phases, phases, indexing='ij')
    torus = _lemma43_f(l1, l2, l3, Z1, Z2)
    i, j = np.unravel_index(int(np.argmax(torus)), torus.shape)

    def on_torus(x):
        return -_lemma43_f(l1, l2, l3, np.exp(1j * x[0]), np.exp(1j * x[1]))

    res = optimize.minimize(on_torus, [np.angle(Z1[i, j]), np.angle(Z2[i, j])], method='Nelder-Mead',
                            options=dict(xatol=1e-12, fatol=1e-14))
    torus_value = max(float(-res.fun), float(torus[i, j]))
    torus_point = (np.exp(1j * res.x[0]), np.exp(1j * res.x[1])) if -res.fun >= torus[i, j] else (Z1[i, j], Z2[i, j])

    radii = np.arange(radial) / radial
    Z2 = (radii[:, None] * phases[None, :]).ravel()
    r1, B = _best_z1(l1, l3, Z2)
    A = 1 + l2 * Z2
    Z1 = r1 * np.exp(1j * (np.angle(A) - np.angle(np.where(np.abs(B) > 0, B, 1.0))))
    interior = _lemma43_f(l1, l2, l3, Z1, Z2)
    k = int(np.argmax(interior))

    def inside(x):
        z2 = complex(x[0], x[1])
        if abs(z2) > 1:
            z2 = z2 / abs(z2)
        r, b = _best_z1(l1, l3, np.array([z2]))
        a = 1 + l2 * z2
        z1 = r[0] * np.exp(1j * (np.angle(a) - np.angle(b[0] if abs(b[0]) > 0 else 1.0)))
        return -float(_lemma43_f(l1, l2, l3, z1, z2))

    res = optimize.minimize(inside, [Z2[k].real, Z2[k].imag], method='Nelder-Mead',
                            options=dict(xatol=1e-12, fatol=1e-14))
    interior_value = max(float(-res.fun), float(interior[k]))
    value = max(torus_value, interior_value)
    attained = torus_value >= value - TORUS_TOL
    point = torus_point if attained else (Z1[k], Z2[k])
    return value, (complex(point[0]), complex(point[1])), attained


def _prop45_gap(alpha, beta, c, d, gamma, delta):
    lhs = abs(alpha) ** 2 * np.abs(gamma) ** 2 + abs(beta) ** 2 * np.abs(delta) ** 2
    rhs = np.max(np.abs(np.multiply.outer(gamma, c) + np.multiply.outer(delta, d)) ** 2, axis=-1)
    return rhs - lhs


def prop45_check(c, d, alpha, beta, grid=PROP45_GRID, tol=1e-9):
    """
    Checks the hypothesis |alpha gamma|^2 + |beta delta|^2 <= max_j |gamma c_j + delta d_j|^2
    over the unit sphere of (gamma, delta) and, when it holds, the
    conclusion |alpha|^2 + |beta|^2 <= 1.
    """
    c, d = np.asarray(c, dtype=complex), np.asarray(d, dtype=complex)
    if np.max(np.abs(c) ** 2 + np.abs(d) ** 2) > 1 + 1e-12:
        raise PreconditionFailed('Columns must satisfy |c_j|^2 + |d_j|^2 <= 1')
    t = np.linspace(0, np.pi / 2, grid)
    phi = 2 * np.pi * np.arange(2 * grid) / (2 * grid)
    T, F = np.meshgrid(t, phi, indexing='ij')
    gamma, delta = np.cos(T).ravel(), (np.sin(T) * np.exp(1j * F)).ravel()
    gaps = _prop45_gap(alpha, beta, c, d, gamma, delta)

    def f(x):
        return float(_prop45_gap(alpha, beta, c, d, np.array([np.cos(x[0])]),
                                 np.array([np.sin(x[0]) * np.exp(1j * x[1])]))[0])

    margin = float(np.min(gaps))
    for j in np.argsort(gaps)[:5]:
        res = optimize.minimize(f, [T.ravel()[j], F.ravel()[j]], method='Nelder-Mead',
                                options=dict(xatol=1e-12, fatol=1e-15))
        margin = min(margin, float(res.fun))
    conclusion = abs(alpha) ** 2 + abs(beta) ** 2
    if margin < -tol:
        return Prop45Result('vacuous', margin, conclusion)
    return Prop45Result('confirmed' if conclusion <= 1 + 1e-6 else 'violated', margin, conclusion)


def prop44_instance(space, T, restarts=summing.DEFAULT_RESTARTS, seed=0):
    """
    Columns c, d and diagonal entries alpha, beta from a norm-one T on a
    2-dim subspace of l_inf^3 and a norm-one v with uv diagonal.
    """
    norm = operators.op_norm(T, seed=seed, strict=False)
    u = T.scaled(1.0 / norm.upper)
    _, witness = summing.pi2_lower(u, n_vec=2, restarts=restarts, seed=seed)
    C = np.hstack([witness.vectors, np.zeros((space.dim, 2), dtype=space.dtype)])[:, :2]
    C = C / np.sqrt(max(float(np.max(_square(space, C))), 1.0))
    U, s, Vh = np.linalg.svd(u.matrix @ C)
    Cv = C @ numerics.adjoint(Vh)
    values = space.basis @ Cv
    s = np.concatenate([s, np.zeros(2 - s.size)])
    return values[:, 0], values[:, 1], float(s[0]), float(s[1])


def _square(space, C):
    return np.sum(np.abs(space.basis @ C) ** 2, axis=1)


def operator_verdict(T, vectors, gap=summing.DEFAULT_GAP, seed=0, budget=None, **details):
    """Verdict for a given operator and witness system: pi_2 lower bound over the certified norm"""
    witness = summing.WitnessSystem(T.source, vectors)
    square = float(np.max(witness.square_function))
    if square > 1 + 1e-12:
        raise ContractViolation('Witness square function exceeds one', square=square)
    lower = witness.value(T)
    norm = operators.op_norm(T, gap=gap, seed=seed, strict=False)
    ratio = lower / norm.upper
    status = FAILS if ratio >= 1 + summing.REFUTATION_FACTOR * norm.gap and ratio > 1 + summing.RATIO_TOL else INCONCLUSIVE
    LOG.info('Operator verdict %s with ratio %.12g', status, ratio)
    return Verdict(status, ratio - 1,
                   dict(details, operator=T.matrix, witness=witness.vectors, pi2_lower=lower, norm_upper=norm.upper,
                        norm_lower=norm.lower, norm_witness=norm.witness, norm_method=norm.method),
                   dict(budget or {}, gap=gap, seed=seed))


# Real constructions

def _independence(z1, z2):
    return abs(z1[0] * z2[1] - z1[1] * z2[0])


def prop31_refute(z1, z2, z3, gap=summing.DEFAULT_GAP, restarts=summing.DEFAULT_RESTARTS, seed=0):
    """u : l_1^3 -> l_2^2 with u e_i = z_i; pairwise independent unit images force pi_2(u) > 1"""
    Z = np.column_stack([np.asarray(z, dtype=float) for z in (z1, z2, z3)])
    if Z.shape[0] != 2:
        raise PreconditionFailed('Images must lie in l_2^2')
    if np.max(np.abs(np.linalg.norm(Z, axis=0) - 1)) > UNIT_TOL:
        raise PreconditionFailed('Images must be unit vectors')
    margin = min(_independence(Z[:, i], Z[:, j]) for i, j in itertools.combinations(range(3), 2))
    if margin < 1e-6:
        raise PreconditionFailed('Images must be pairwise independent', margin=margin)
    u = operators.OperatorRep(spaces.l1_signs(3), Z)
    norm = operators.op_norm(u)
    cert = summing.pi2_certify(u, gap=gap, restarts=restarts, seed=seed)
    ratio = cert.lower / norm.upper
    status = FAILS if ratio > 1 + summing.REFUTATION_FACTOR * norm.gap + summing.RATIO_TOL else INCONCLUSIVE
    return Verdict(status, ratio - 1,
                   dict(operator=Z, witness=cert.witness.vectors, pi2_lower=cert.lower, pi2_upper=cert.upper,
                        norm_upper=norm.upper, norm_lower=norm.lower, norm_witness=norm.witness,
                        independence=margin),
                   dict(gap=gap, restarts=restarts, seed=seed))


def cor32_functionals(u, points, gap=summing.DEFAULT_GAP, restarts=summing.DEFAULT_RESTARTS, seed=0):
    """
    u : l_2^2 -> X of norm one attaining its norm at three pairwise
    independent points. Norming functionals phi_i of u x_i satisfy
    u* phi_i = x_i, so the adjoint on X* has pi_2 > 1.
    """
    space = u.target
    if space.is_complex:
        raise PreconditionFailed('Norming functionals are taken in the real case')
    if u.norm() > 1 + UNIT_TOL:
        raise PreconditionFailed('Map must have norm one', norm=u.norm())
    X = np.asarray(points, dtype=float)
    functionals, images = [], []
    for x in X.T:
        y = u.matrix @ x
        values = space.basis @ y
        k = int(np.argmax(np.abs(values)))
        if abs(values[k]) < 1 - UNIT_TOL:
            raise PreconditionFailed('Map does not attain its norm at the point', value=float(abs(values[k])))
        phi = np.sign(values[k]) * space.basis[k]
        functionals.append(phi)
        images.append(u.matrix.T @ phi)
    verdict = prop31_refute(*images, gap=gap, restarts=restarts, seed=seed)
    return dict(functionals=np.array(functionals), images=np.array(images), verdict=verdict)


def _inside_contacts(space, E):
    """Contact points of an inscribed ellipsoid with the facets of a real unit ball"""
    Qinv = linalg.inv(E.Q)
    found = []
    for b in space.basis:
        h = float(np.sqrt(b @ Qinv @ b))
        if abs(h - 1) <= PAIRING_TOL:
            x = Qinv @ b / h
            found.extend([x, -x])
    return spaces._dedupe(found) if found else np.zeros((0, space.dim))


def _representatives(points):
    reps = []
    for p in points:
        j = int(np.argmax(np.abs(p) > 1e-9))
        q = p * np.sign(p[j])
        if all(np.max(np.abs(q - r)) > 1e-8 for r in reps):
            reps.append(q)
    return np.array(reps)


def milman_wolfson(space):
    """|<x, y>| = 1/n in the minimal-ellipsoid inner product, for inside x and outside y"""
    if space.is_complex:
        raise PreconditionFailed('Contact pairing is checked on real spaces')
    n = space.dim
    E1 = ellipsoids.mvee(space)
    E2 = ellipsoids.inscribed(space)
    outside = _representatives(ellipsoids.contact_points(space, E1).contact_points)
    inside = _representatives(_inside_contacts(space, E2))
    pairing = inside @ E1.Q @ outside.T if len(inside) else np.zeros((0, len(outside)))
    deviation = float(np.max(np.abs(np.abs(pairing) - 1.0 / n))) if pairing.size else float('inf')
    return dict(outside=outside, inside=inside, pairing=pairing, deviation=deviation, E1=E1, E2=E2)


_PATTERN = np.array([[1, 1, 1], [1, 1, -1], [1, -1, 1]])


def _sign_pattern(S, outside, inside):
    """Orders and signs three outside and three inside points into the hexagon pattern"""
    for ys in itertools.permutations(range(len(outside)), 3):
        Y = outside[list(ys)]
        if abs(np.linalg.det(Y)) < 1e-9:
            continue
        for xs in itertools.permutations(range(len(inside)), 3):
            M = S[np.ix_(list(xs), list(ys))]
            col = M[0].copy()
            M = M * col[None, :]
            row = M[:, 0].copy()
            M = M * row[:, None]
            if np.array_equal(M, _PATTERN):
                return Y * col[:, None], inside[list(xs)] * row[:, None], M
    return None


def hexagon_section(space, gap=summing.DEFAULT_GAP, restarts=summing.DEFAULT_RESTARTS, seed=0):
    """
    Two-dim section F = span{(y1+y2)/2, (y1+y3)/2} of a real maximal-distance
    space built from outside contact points y_i and inside contact points x_i
    with <n x_i, y_j> in the sign pattern (+++, ++-, +-+). The section is a
    hexagon when its own inscribed ellipse touches the sphere at six points.
    """
    if space.is_complex:
        raise PreconditionFailed('Hexagon sections are built in real spaces')
    if space.dim < 3:
        raise PreconditionFailed('Hexagon sections need dimension at least 3', dim=space.dim)
    n = space.dim
    mw = milman_wolfson(space)
    if mw['deviation'] > PAIRING_TOL:
        LOG.warning('Contact pairing deviates from 1/n by %.3g', mw['deviation'])
    S = np.sign(np.round(n * mw['pairing'], 6)).astype(int)
    found = _sign_pattern(S, mw['outside'], mw['inside'])
    if found is None:
        raise PreconditionFailed('No contact points in the hexagon sign pattern',
                                 outside=len(mw['outside']), inside=len(mw['inside']))
    Y, X, signs = found
    basis = np.column_stack([(Y[0] + Y[1]) / 2, (Y[0] + Y[2]) / 2])
    section = spaces.subspace(space, basis, label='hexagon(%s)' % space.label)
    EF = ellipsoids.inscribed(section)
    contacts = _inside_contacts(section, EF)
    dual = {}
    if len(contacts) >= 6:
        points = EF.root() @ _representatives(contacts)[:3].T
        u = operators.HilbertDomainRep(space, basis @ EF.inverse_root())
        try:
            dual = cor32_functionals(u, points, gap=gap, restarts=restarts, seed=seed)
        except PreconditionFailed as err:
            LOG.debug('Norming functionals unavailable: %s', err.message)
    return HexagonSection(outside=Y, inside=X, signs=signs, basis=basis, section_form=EF.Q,
                          contact_count=len(contacts), pairing_deviation=mw['deviation'], dual_certificate=dual)


# Complex constructions

def _block(a):
    """Three disjoint blocks with sums <= 1 and total > 1 (first fit on decreasing entries)"""
    order = np.argsort(-a, kind='stable')
    blocks, sums = [], []
    for i in order:
        if a[i] <= 0:
            continue
        for b, s in enumerate(sums):
            if s + a[i] <= 1 + 1e-12:
                blocks[b].append(int(i))
                sums[b] += a[i]
                break
        else:
            blocks.append([int(i)])
            sums.append(float(a[i]))
    while len(blocks) < 3:
        b = next(j for j, blk in enumerate(blocks) if len(blk) > 1)
        blocks.append([blocks[b].pop()])
    return blocks[:3]


def normal_form_l4(space):
    """
    Normal form span{e_i + a_i e_(n+1)} with a_i >= 0 of an n-dim subspace of
    l_inf^(n+1), reached by coordinate order and unimodular scalings. For
    n > 3 the vectors are blocked into three with coefficient sums <= 1.
    """
    order, a, C = complexify.annihilator_normal_form(space)
    phases = np.ones(space.ambient, dtype=complex)
    for i, ai in enumerate(a):
        if abs(ai) > 1e-15:
            phases[order[i]] = ai / abs(ai)
    mods = np.abs(a)
    blocks = [[i] for i in range(mods.size)]
    if mods.size > 3 and np.sum(mods) > 1:
        blocks = _block(mods)
        mods = np.array([np.sum(mods[b]) for b in blocks])
    return NormalForm(a=mods, order=order, phases=phases, blocks=blocks,
                      space=spaces.normal_form(mods, numerics.COMPLEX))


def example23_complex():
    """
    The 2-dim subspace of complex l_inf^4 with x1 = (1,0,1/sqrt2,1/sqrt2)
    and x2 = (0,1,i/sqrt2,1/sqrt2). The variant x2 = (1,0,i/sqrt2,1/sqrt2)
    has square function (2,0,1,1) and is not used.
    """
    r = 1 / np.sqrt(2)
    B = np.array([[1, 0], [0, 1], [r, 1j * r], [r, r]], dtype=complex)
    space = spaces.SupSpace(numerics.COMPLEX, B, label='example23_complex')
    square = np.sum(np.abs(B) ** 2, axis=1)
    misprint = np.abs(np.array([1, 0, r, r])) ** 2 + np.abs(np.array([1, 0, 1j * r, r])) ** 2
    return space, np.eye(2, dtype=complex), dict(square_function=square, variant_square_function=misprint)


def _solve_alpha(a, gamma, phi, psi):
    """alpha in [0, 1] with |alpha a1 + phi a2 + gamma psi a3|^2 + |beta a1 - delta psi a3|^2 = 1"""
    delta = np.sqrt(max(1 - gamma ** 2, 0.0))

    def h(s):
        alpha, beta = np.cos(s), np.sin(s)
        return abs(alpha * a[0] + phi * a[1] + gamma * psi * a[2]) ** 2 + abs(beta * a[0] - delta * psi * a[2]) ** 2 - 1

    grid = np.linspace(1e-6, np.pi / 2 - 1e-6, 65)
    values = np.array([h(s) for s in grid])
    roots = []
    for lo, hi, vlo, vhi in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if vlo * vhi < 0:
            roots.append(optimize.brentq(h, lo, hi, xtol=1e-15))
    return roots


def _search_56(a, tries, rng, starts, seed):
    """Best (deviation, C, residual) over random gamma, phi, psi for the coordinate order of a"""
    space = spaces.normal_form(a, numerics.COMPLEX)
    best = None
    for attempt in range(tries):
        gamma = float(rng.uniform(0, 1))
        phi, psi = np.exp(1j * rng.uniform(0, 2 * np.pi, 2))
        delta = np.sqrt(1 - gamma ** 2)
        for s in _solve_alpha(a, gamma, phi, psi):
            alpha, beta = np.cos(s), np.sin(s)
            C = np.array([[alpha, beta], [phi, 0], [gamma * psi, -delta * psi]], dtype=complex)
            values = space.basis @ C
            residual = float(np.max(np.abs(_square(space, C) - 1)))
            if residual > 1e-9:
                continue
            deviation, _ = flat_deviation(spaces.SupSpace(numerics.COMPLEX, values), starts=starts, seed=seed)
            if best is None or deviation > best[0]:
                best = (deviation, C, residual)
        if best is not None and best[0] >= 10 * NO_FLAT_MARGIN:
            break
    return best


def counterexample_56(a, tries=200, seed=0, starts=DEFAULT_STARTS, gap=summing.DEFAULT_GAP):
    """
    Vectors x = (alpha, phi, gamma psi, ...) and y = (beta, 0, -delta psi, ...)
    in span{(1,0,0,a1), (0,1,0,a2), (0,0,1,a3)} with |x|^2 + |y|^2 = 1 and
    no flat vector in their span, then the operator P I_(inf,2) onto span{x, y}
    for the uniform measure. The coordinate roles are permuted when the
    given order has no solution. Returns (x, y, verdict) with x, y as values.
    """
    a = np.abs(np.asarray(a, dtype=complex))
    if a.size != 3 or np.any(a > 1 + 1e-12) or np.sum(a) <= 1:
        raise PreconditionFailed('Need |a_i| <= 1 and |a_1| + |a_2| + |a_3| > 1', a=a.tolist())
    space = spaces.normal_form(a, numerics.COMPLEX)
    rng = np.random.default_rng(seed)
    best, order = None, None
    for perm in itertools.permutations(range(3)):
        found = _search_56(a[list(perm)], tries, rng, starts, seed)
        if found is not None and (best is None or found[0] > best[0]):
            best, order = found, perm
        if best is not None and best[0] >= NO_FLAT_MARGIN:
            break
    if best is None or best[0] < NO_FLAT_MARGIN:
        LOG.info('No admissible pair without flat vectors for a=%s', a)
        return None, None, Verdict(INCONCLUSIVE, 0.0, dict(a=a), dict(tries=tries, seed=seed))
    deviation, C, residual = best
    C = C[np.argsort(order)]
    C = C / np.sqrt(max(float(np.max(_square(space, C))), 1.0))
    values = space.basis @ C
    mu = spaces.MeasureWeights.uniform(space.ambient)
    I = operators.l2_identity_operator(space, mu)
    U, _, _ = np.linalg.svd(I.matrix @ C, full_matrices=False)
    T = operators.OperatorRep(space, numerics.adjoint(U) @ I.matrix)
    verdict = operator_verdict(T, C, gap=gap, seed=seed, budget=dict(tries=tries, starts=starts),
                               a=a, order=list(order), square_residual=residual, flat_deviation=deviation)
    return values[:, 0], values[:, 1], verdict


def complex_operator_factor(T, gap=summing.DEFAULT_GAP, restarts=summing.DEFAULT_RESTARTS, seed=0):
    """
    For T on a 2-dim subspace of complex l_inf^3: when T has equal norms at
    the two flat vectors it is a complexification and pi_2(T) = ||T||;
    when it attains its norm at a non-flat vector it factors as T = WV
    through l_inf^2 with ||V||, ||W|| <= 1.
    """
    space = T.source
    form = complexify.real_form(space)
    norm = operators.op_norm(T, gap=gap, seed=seed, strict=False)
    T1 = T.scaled(1.0 / norm.upper)
    f1, f2 = (np.linalg.lstsq(space.basis, f, rcond=None)[0] for f in form.flats)
    at_flats = [float(np.linalg.norm(T1.matrix @ f)) for f in (f1, f2)]
    report = dict(norm=[norm.lower, norm.upper], at_flats=at_flats)
    if abs(at_flats[0] - at_flats[1]) <= 1e-9:
        p, q = (f1 + f2) / 2, (f1 - f2) / 2j
        real_basis = spaces.subspace(space, np.column_stack([p, q]))
        T2 = operators.OperatorRep(real_basis, T1.matrix @ np.column_stack([p, q]))
        ok, defect = complexify.is_complexification(T2)
        cert = summing.pi2_certify(T1, gap=gap, restarts=restarts, seed=seed)
        report.update(case='equal-flats', complexification=ok, defect=defect, pi2=[cert.lower, cert.upper])
        return report
    c = norm.witness / space.norm(norm.witness)
    x = space.basis @ c
    if float(np.max(np.abs(np.abs(x) - 1))) <= 1e-6:
        report.update(case='flat-norming')
        return report
    idx = [int(k) for k in np.argsort(-np.abs(x), kind='stable')[:2]]
    V = space.basis[idx]
    W = T1.matrix @ linalg.inv(V)
    w_norm = operators.op_norm(operators.OperatorRep(spaces.linf(2, numerics.COMPLEX), W), gap=gap, seed=seed,
                               strict=False)
    if w_norm.upper > 1 + gap + 1e-6:
        raise ContractViolation('Factor W exceeds norm one', W_norm=w_norm.upper, coordinates=idx)
    # V restricts values to two coordinates, so ||V|| <= 1
    report.update(case='non-flat', coordinates=idx, V=V, W=W, V_norm=1.0, W_norm=w_norm.upper,
                  unimodular=float(np.min(np.abs(x[idx]))))
    return report
