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
Distance ellipsoids of unit balls: minimal-volume enclosing, maximal-volume
inscribed, John decompositions, homothety reports and Banach-Mazur bounds.

An ellipsoid is {c : c*Qc <= 1} in coefficient coordinates.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy import linalg

from ansible_collections.numlab.summing.plugins.module_utils import numerics, operators, spaces, summing
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, warn


LOG = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
MAX_ITERATIONS = 100000
REFRESH = 500
CONTACT_TOL = 1e-8
DISTANCE_RESOLUTION = 32


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    Q: np.ndarray
    iterations: int = 0

    def __post_init__(self):
        Q = numerics.as_hermitian(self.Q, tol=1e-8)
        w = linalg.eigvalsh(Q)
        if w[0] <= 1e-12 * w[-1]:
            raise ContractViolation('Ellipsoid form is not positive definite', min_eigenvalue=float(w[0]))
        Q.setflags(write=False)
        object.__setattr__(self, 'Q', Q)

    @property
    def dim(self):
        return self.Q.shape[0]

    @property
    def is_complex(self):
        return np.iscomplexobj(self.Q)

    @property
    def logdet(self):
        return float(np.sum(np.log(linalg.eigvalsh(self.Q))))

    @property
    def log_volume(self):
        """log volume up to the unit-ball constant, in real dimension n or 2n"""
        return -self.logdet if self.is_complex else -self.logdet / 2

    def form(self, coeffs):
        C = np.asarray(coeffs)
        return np.real(np.sum(np.conj(C) * (self.Q @ C), axis=0))

    def scaled(self, t):
        """The ellipsoid t E"""
        return Ellipsoid(self.Q / (t * t))

    def root(self):
        w, U = linalg.eigh(self.Q)
        return (U * np.sqrt(w)) @ numerics.adjoint(U)

    def inverse_root(self):
        w, U = linalg.eigh(self.Q)
        return (U / np.sqrt(w)) @ numerics.adjoint(U)


@dataclass(frozen=True, eq=False)
class JohnDecomposition:
    contact_points: np.ndarray
    weights: np.ndarray
    residual: float

    @property
    def total(self):
        return float(np.sum(self.weights))

    def __len__(self):
        return self.contact_points.shape[0]


@dataclass(frozen=True)
class HomothetyReport:
    s_numbers: List[float]
    sum_sq: float
    volume_product: float
    volume_bound: float
    volume_ok: bool
    homothety_defect: float
    complex_exponent: bool


@dataclass(frozen=True, eq=False)
class DistanceBounds:
    upper: float
    lower: float
    upper_witness: np.ndarray
    lower_witnesses: list = field(default_factory=list)


def polar(E):
    """Polar ellipsoid under the Hermitian pairing"""
    return Ellipsoid(linalg.inv(E.Q))


def volume_ratio(E1, E2):
    """vol(E1) / vol(E2)"""
    return float(np.exp(E1.log_volume - E2.log_volume))


def khachiyan(points, tol=DEFAULT_TOL, max_iterations=MAX_ITERATIONS):
    """
    Minimal-volume centered ellipsoid around the rows of points.

    Frank-Wolfe iterations on the design weights u with away steps, keeping
    X^-1 and the leverages M_j = c_j* X^-1 c_j current by rank-one updates.
    Returns (Q, u, iterations) with Q = X^-1 / n.
    """
    P = np.asarray(points)
    C = P.T
    n, m = C.shape
    d = float(n)
    u = np.full(m, 1.0 / m)

    def refresh(u):
        X = (C * u) @ numerics.adjoint(C)
        Xinv = linalg.inv((X + numerics.adjoint(X)) / 2)
        M = np.real(np.sum(np.conj(C) * (Xinv @ C), axis=0))
        return Xinv, M

    Xinv, M = refresh(u)
    it = 0
    for it in range(1, max_iterations + 1):
        j = int(np.argmax(M))
        support = np.flatnonzero(u > 0)
        k = int(support[np.argmin(M[support])])
        plus, minus = M[j] / d - 1, 1 - M[k] / d
        if max(plus, minus) <= tol:
            break
        if plus >= minus:
            idx = j
            beta = (M[j] - d) / (d * (M[j] - 1))
        else:
            idx = k
            drop = -u[k] / (1 - u[k])
            beta = max(drop, (M[k] - d) / (d * (M[k] - 1))) if M[k] > 1 else drop
        c = C[:, idx]
        b = beta / (1 - beta)
        Xc = Xinv @ c
        w = np.conj(Xc) @ C
        denom = 1 + b * M[idx]
        Xinv = (Xinv - b * np.outer(Xc, np.conj(Xc)) / denom) / (1 - beta)
        M = (M - b * np.abs(w) ** 2 / denom) / (1 - beta)
        u = (1 - beta) * u
        u[idx] += beta
        u = np.maximum(u, 0.0)
        if it % REFRESH == 0:
            u = u / np.sum(u)
            Xinv, M = refresh(u)
    else:
        LOG.warning('Khachiyan iteration stopped after %d steps', max_iterations)
    Xinv, _ = refresh(u / np.sum(u))
    return Xinv / d, u, it


def mvee(space, tol=DEFAULT_TOL, resolution=spaces.DEFAULT_RESOLUTION):
    """Minimal-volume ellipsoid containing Ball(X), computed on its extreme points"""
    ext = spaces.extreme_points(space, resolution)
    Q, u, iterations = khachiyan(ext.points, tol=tol)
    E = Ellipsoid(Q, iterations)
    outside = float(np.max(E.form(ext.points.T)))
    LOG.debug('MVEE after %d iterations, max form on extreme points %.12g', iterations, outside)
    return E


def inscribed(space, tol=DEFAULT_TOL, resolution=spaces.DEFAULT_RESOLUTION, warning_handler=None,
              max_error=spaces.MAX_ERROR_BOUND):
    """
    Maximal-volume ellipsoid inside Ball(X), the polar of the minimal one
    around Ball(X*). The dual coordinates pair bilinearly with X, hence the
    conjugate inverse. max_error=None accepts any discretization of the dual.
    """
    dual = spaces.dual_embed(space, resolution, max_error=max_error)
    E_star = mvee(dual, tol=tol, resolution=resolution)
    E = Ellipsoid(np.conj(linalg.inv(E_star.Q)), E_star.iterations)
    B = space.basis
    reach = np.sqrt(np.real(np.sum(B.T * (linalg.inv(E.Q) @ np.conj(B).T), axis=0)))
    excess = float(np.max(reach)) - 1
    if excess > 1e-8:
        warn(warning_handler, 'Inscribed ellipsoid leaves the ball by %.3g' % excess, excess=excess)
    return E


def _phase_normalized(points):
    """One representative per scalar multiple: first significant coordinate real positive"""
    P = np.array(points)
    for row in P:
        j = int(np.argmax(np.abs(row) > 1e-9))
        row *= np.conj(row[j]) / abs(row[j])
    return P


def contact_points(space, E, tol=CONTACT_TOL, resolution=spaces.DEFAULT_RESOLUTION):
    """
    Contact points of Ball(X) with the boundary of E and weights resolving
    the identity in E coordinates. Weights are shared equally between points
    that differ by a unimodular factor, so that they sum to n.
    """
    ext = spaces.extreme_points(space, resolution)
    values = E.form(ext.points.T)
    contacts = ext.points[np.abs(values - 1) <= tol]
    if len(contacts) < space.dim:
        raise ContractViolation('Fewer contact points than the dimension', found=len(contacts), dim=space.dim)
    reps = _phase_normalized(contacts)
    groups = []
    for i, r in enumerate(reps):
        for g in groups:
            if np.max(np.abs(reps[g[0]] - r)) <= 1e-8:
                g.append(i)
                break
        else:
            groups.append([i])
    root = E.root()
    Y = (root @ reps[[g[0] for g in groups]].T).T
    dyads = np.einsum('ki,kj->kij', Y, np.conj(Y)).reshape(len(groups), -1)
    columns = np.vstack([dyads.real.T, dyads.imag.T]) if E.is_complex else dyads.real.T
    target = np.eye(space.dim).ravel()
    target = np.concatenate([target, np.zeros_like(target)]) if E.is_complex else target
    group_weights, residual = numerics.nnls(columns, target)
    weights = np.zeros(len(contacts))
    for g, w in zip(groups, group_weights):
        weights[g] = w / len(g)
    LOG.debug('John decomposition: %d contact points, residual %.3g', len(contacts), residual)
    return JohnDecomposition(contacts, weights, residual)


def homothety_check(space, resolution=spaces.DEFAULT_RESOLUTION):
    """s-numbers of u1 u2 for the two ellipsoid maps and the homothety defect of E2 against E1/sqrt(n)"""
    n = space.dim
    E1 = mvee(space, resolution=resolution)
    E2 = inscribed(space, resolution=resolution)
    composite = E1.root() @ E2.inverse_root()
    s = np.linalg.svd(composite, compute_uv=False)
    cplx = E1.is_complex
    product = float(np.prod(s ** 2)) if cplx else float(np.prod(s))
    bound = float(n ** (-n)) if cplx else float(n ** (-n / 2))
    defect = float(np.max(np.abs(E2.Q - n * E1.Q)) / np.max(np.abs(E2.Q)))
    return HomothetyReport(s_numbers=[float(x) for x in s], sum_sq=float(np.sum(s ** 2)),
                           volume_product=product, volume_bound=bound, volume_ok=product >= bound * (1 - 1e-8),
                           homothety_defect=defect, complex_exponent=cplx)


def _trace_duality(space, a_matrix, resolution, restarts, seed):
    """n / (pi_2(a) pi_2((a^-1)*)), a lower bound for d(X, l_2^n) from any isomorphism a"""
    n = space.dim
    a = operators.OperatorRep(space, a_matrix)
    b = operators.HilbertDomainRep(space, linalg.inv(a_matrix))
    dual = spaces.dual_embed(space, resolution, max_error=None)
    b_star = operators.OperatorRep(dual, b.matrix.T)
    pa = summing.pi2_upper(a, restarts=restarts, seed=seed)
    pb = summing.pi2_upper(b_star, restarts=restarts, seed=seed)
    lower = n / (pa.value * pb.value)
    return lower, dict(operator=np.asarray(a_matrix), pi2_operator=pa.value, pi2_inverse_adjoint=pb.value,
                       measure_operator=pa.mu.weights, measure_inverse_adjoint=pb.mu.weights, resolution=resolution)


def distance_bounds(space, k_search=0, restarts=summing.DEFAULT_RESTARTS, seed=0, resolution=DISTANCE_RESOLUTION):
    """
    Bounds for the Banach-Mazur distance from X to l_2^n.

    The upper bound is ||u|| ||u^-1|| for the minimal-volume ellipsoid map u.
    The lower bound uses trace duality: every isomorphism a gives
    d >= n / (pi_2(a) pi_2((a^-1)*)) with both factors from Pietsch
    measures, for a among the two ellipsoid maps and, when k_search > 0,
    the invertible defect-ratio witnesses.
    """
    n = space.dim
    E1 = mvee(space)
    u = E1.root()
    norm_u = operators.op_norm(operators.OperatorRep(space, u), strict=False).upper
    norm_inv = operators.HilbertDomainRep(space, linalg.inv(u)).norm()
    upper = norm_u * norm_inv
    candidates = [u]
    try:
        candidates.append(inscribed(space, max_error=None).root())
    except ContractViolation as err:
        LOG.debug('No inscribed ellipsoid candidate: %s', err.message)
    if k_search:
        result = summing.defect_ratio(space, n, restarts=k_search, seed=seed)
        for cand in result.candidates:
            M = cand.operator.matrix
            if M.shape == (n, n) and np.linalg.cond(M) < 1e8:
                candidates.append(M)
    best, witnesses = 0.0, []
    for M in candidates:
        lower, detail = _trace_duality(space, M, resolution, restarts, seed)
        witnesses.append(detail)
        best = max(best, lower)
    LOG.info('Distance bounds [%.12g, %.12g]', best, upper)
    return DistanceBounds(upper=upper, lower=best, upper_witness=u, lower_witnesses=witnesses)
