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
Linear maps between sup-normed spaces and Hilbert spaces.

OperatorRep is a map X -> l_2^k stored as a k x n matrix on coefficients.
HilbertDomainRep is a map l_2^k -> X stored as an n x k matrix; it appears as
the adjoint of an OperatorRep and its norm has a closed form.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from ansible_collections.numlab.summing.plugins.module_utils import numerics, spaces
from ansible_collections.numlab.summing.plugins.module_utils.errors import (
    ContractViolation, GapNotReached, warn
)


LOG = logging.getLogger(__name__)

DEFAULT_GAP = 1e-6
DEFAULT_GRID = 16
DEFAULT_MAX_CELLS = 2000000
DEFAULT_RESTARTS = 8
ORTHONORMAL_TOL = 1e-10
ADJUSTMENT_WARN = 1e-8

VERTEX_EXACT = 'vertex-exact'
LIPSCHITZ_GRID = 'lipschitz-grid'
HULL_ROWS = 'hull-rows'


@dataclass(frozen=True, eq=False)
class OperatorRep:
    source: spaces.SupSpace
    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix)
        if M.ndim == 1:
            M = M.reshape(1, -1)
        if M.ndim != 2 or M.shape[1] != self.source.dim:
            raise ContractViolation('Operator matrix must be k x n with n the source dimension',
                                    shape=list(M.shape), dim=self.source.dim)
        if not self.source.is_complex and np.iscomplexobj(M) and np.any(M.imag != 0):
            raise ContractViolation('Complex matrix on a real source space')
        M = np.array(M, dtype=self.source.dtype)
        M.setflags(write=False)
        object.__setattr__(self, 'matrix', M)

    @property
    def target_dim(self):
        return self.matrix.shape[0]

    @property
    def field(self):
        return self.source.field

    def apply(self, coeffs):
        return self.matrix @ np.asarray(coeffs)

    def scaled(self, t):
        return OperatorRep(self.source, t * self.matrix)

    @property
    def gram(self):
        """M*M, the form with ||Tc||^2 = c*(M*M)c"""
        M = self.matrix
        return numerics.adjoint(M) @ M


@dataclass(frozen=True, eq=False)
class HilbertDomainRep:
    target: spaces.SupSpace
    matrix: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.matrix)
        if V.ndim == 1:
            V = V.reshape(-1, 1)
        if V.shape[0] != self.target.dim:
            raise ContractViolation('Matrix must be n x k with n the target dimension',
                                    shape=list(V.shape), dim=self.target.dim)
        V = np.array(V, dtype=self.target.dtype)
        V.setflags(write=False)
        object.__setattr__(self, 'matrix', V)

    @property
    def source_dim(self):
        return self.matrix.shape[1]

    def norm(self):
        """sup over unit h of max_k |(BVh)(k)|, i.e. the largest row norm of BV"""
        rows = self.target.basis @ self.matrix
        return float(np.max(np.linalg.norm(rows, axis=1)))


@dataclass(frozen=True)
class NormCertificate:
    lower: float
    witness: np.ndarray
    upper: float
    method: str
    converged: bool = True

    @property
    def gap(self):
        return self.upper - self.lower


def _certificate(T, witness, upper, method, converged=True):
    w = np.asarray(witness)
    scale = spaces.norm_eval(T.source, w)
    if scale > 0:
        w = w / scale
    lower = float(np.linalg.norm(T.matrix @ w))
    return NormCertificate(lower=lower, witness=w, upper=max(float(upper), lower), method=method,
                           converged=converged)


def _hull_norm(T):
    """Norm bounds from the rows generating a dual-embedded ball"""
    hull = T.source.hull
    R = np.asarray(hull.points).T
    images = np.linalg.norm(T.matrix @ R, axis=0)
    norms = spaces.norm_eval(T.source, R)
    ratios = images / norms
    j = int(np.argmax(ratios))
    upper = hull.inflation * float(np.max(images))
    return _certificate(T, R[:, j], upper, VERTEX_EXACT if hull.error_bound == 0 else HULL_ROWS)


def _vertex_norm(T):
    ext = spaces.extreme_points(T.source)
    images = np.linalg.norm(ext.points @ T.matrix.T, axis=1)
    j = int(np.argmax(images))
    return _certificate(T, ext.points[j], images[j], VERTEX_EXACT)


def _ratio(T, c):
    nrm = spaces.norm_eval(T.source, c)
    return float(np.linalg.norm(T.matrix @ c)) / nrm if nrm > 0 else 0.0


def _polish(T, c):
    """Local Nelder-Mead ascent of ||Mc|| / ||Bc|| over complex c"""
    n = T.source.dim

    def f(x):
        z = x[:n] + 1j * x[n:]
        return -_ratio(T, z)

    x0 = np.concatenate([c.real, c.imag])
    res = optimize.minimize(f, x0, method='Nelder-Mead',
                            options=dict(xatol=1e-12, fatol=1e-14, maxiter=400 * n))
    z = res.x[:n] + 1j * res.x[n:]
    return z if _ratio(T, z) >= _ratio(T, c) else c


def _curvature(G):
    """Second-order bound of theta -> zeta*G zeta per unit cell radius squared"""
    n = G.shape[0]
    weights = np.full((n, n), 4.0)
    weights[0, :] = weights[:, 0] = 1.0
    np.fill_diagonal(weights, 0.0)
    return float(np.sum(np.abs(G) * weights))


def _torus_search(A, R, best, gap, grid, max_cells, target=None):
    """
    Branch and bound for sup ||A zeta|| over zeta = (1, e^(i theta)) with
    max_k |R_k zeta| <= 1. Cells are refined while their bound exceeds
    best + gap, or target when given. Returns (upper, best value, best zeta,
    converged).
    """
    n = A.shape[1]
    d = n - 1
    G = numerics.adjoint(A) @ A
    if d == 0:
        z = np.ones(1, dtype=complex)
        val = float(np.linalg.norm(A @ z)) if np.max(np.abs(R @ z)) <= 1 + 1e-12 else 0.0
        return val, val, z, True
    H = _curvature(G)
    rowl1 = np.sum(np.abs(R[:, 1:]), axis=1)
    r = np.pi / grid
    axis = (np.arange(grid) + 0.5) * 2 * r
    centers = np.array(list(itertools.product(axis, repeat=d)))
    offsets = np.array(list(itertools.product((-0.5, 0.5), repeat=d)))
    resolved = 0.0
    best_z = None
    evaluated = 0
    while centers.size:
        Z = np.exp(1j * np.column_stack([np.zeros(len(centers)), centers]))
        GZ = Z @ G.T
        g = np.maximum(np.real(np.sum(np.conj(Z) * GZ, axis=1)), 0.0)
        grad = 2 * np.imag(np.conj(Z) * GZ)[:, 1:]
        rz = np.abs(Z @ R.T)
        peak = np.max(rz, axis=1)
        vals = np.sqrt(g) / peak
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, best_z = float(vals[j]), Z[j] / peak[j]
        infeasible = np.any(rz - rowl1 * r > 1 + 1e-12, axis=1)
        bound = np.sqrt(g + np.sum(np.abs(grad), axis=1) * r + H * r * r / 2)
        alive = ~infeasible & (bound > (best + gap if target is None else target))
        done = ~infeasible & ~alive
        if np.any(done):
            resolved = max(resolved, float(np.max(bound[done])))
        evaluated += len(centers)
        if not np.any(alive):
            return max(resolved, best), best, best_z, True
        if evaluated + np.count_nonzero(alive) * len(offsets) > max_cells or (target is not None and best > target):
            upper = max(resolved, best, float(np.max(bound[alive])))
            return upper, best, best_z, False
        r /= 2
        centers = (centers[alive][:, None, :] + 2 * r * offsets[None, :, :]).reshape(-1, d)
    return max(resolved, best), best, best_z, True


def _multistart(T, restarts, seed):
    n = T.source.dim
    rng = np.random.default_rng(seed)
    starts = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(restarts)]
    starts.extend(np.eye(n, dtype=complex))
    best_c = max(starts, key=lambda c: _ratio(T, c))
    return _polish(T, best_c)


def norm_lower(T, restarts=DEFAULT_RESTARTS, seed=0):
    """A norm-one witness and its image norm, without the upper bound search"""
    if T.source.hull is not None:
        cert = _hull_norm(T)
    elif not T.source.is_complex:
        cert = _vertex_norm(T)
    else:
        c = _multistart(T, restarts, seed)
        cert = _certificate(T, c, 0.0, LIPSCHITZ_GRID, converged=False)
    return cert.lower, cert.witness


def _complex_norm(T, gap, grid, max_cells, restarts, seed):
    space = T.source
    best_c = _multistart(T, restarts, seed)
    best = _ratio(T, best_c)
    upper = 0.0
    converged = True
    for S, inv, R in spaces.active_sets(space):
        A = T.matrix @ inv
        up, val, z, ok = _torus_search(A, R, best, gap, grid, max_cells)
        converged = converged and ok
        upper = max(upper, up)
        if z is not None and val > best:
            c = _polish(T, inv @ z)
            if _ratio(T, c) > best:
                best, best_c = _ratio(T, c), c
        LOG.debug('Active set %s: upper %.12g, best %.12g', S, up, best)
    return _certificate(T, best_c, upper, LIPSCHITZ_GRID, converged)


def op_norm(T, gap=DEFAULT_GAP, grid=DEFAULT_GRID, max_cells=DEFAULT_MAX_CELLS, restarts=DEFAULT_RESTARTS,
            seed=0, strict=True, warning_handler=None):
    """
    Certified operator norm of T : X -> l_2^k.

    Real sources are exact: the convex function c -> ||Mc|| peaks at a vertex.
    Dual-embedded sources use their hull rows. Other complex sources combine a
    seeded multistart ascent (lower) with a branch and bound over the phase
    torus of each active row set (upper).
    """
    if not np.any(T.matrix):
        return _certificate(T, np.eye(T.source.dim, 1).ravel().astype(T.source.dtype), 0.0, VERTEX_EXACT)
    space = T.source
    if space.hull is not None:
        cert = _hull_norm(T)
    elif not space.is_complex:
        cert = _vertex_norm(T)
    else:
        cert = _complex_norm(T, gap, grid, max_cells, restarts, seed)
    if cert.gap > gap:
        message = 'Operator norm gap %.3g above the requested %.3g' % (cert.gap, gap)
        if strict:
            raise GapNotReached(message, certificate=cert, gap=cert.gap)
        warn(warning_handler, message, gap=cert.gap)
    LOG.debug('op_norm %s: [%.12g, %.12g]', cert.method, cert.lower, cert.upper)
    return cert


def certified_upper(T, target=0.0, grid=DEFAULT_GRID, max_cells=DEFAULT_MAX_CELLS):
    """
    An upper bound for ||T|| from enumeration or cell bounds alone.

    Complex sources refine only the cells whose bound exceeds target, so a
    caller checking a claimed bound passes that claim. Returns (upper,
    converged); the upper bound holds either way.
    """
    space = T.source
    if not np.any(T.matrix):
        return 0.0, True
    if space.hull is not None:
        images = np.linalg.norm(T.matrix @ np.asarray(space.hull.points).T, axis=0)
        return space.hull.inflation * float(np.max(images)), True
    if not space.is_complex:
        ext = spaces.extreme_points(space)
        return float(np.max(np.linalg.norm(ext.points @ T.matrix.T, axis=1))), True
    upper, converged = 0.0, True
    for S, inv, R in spaces.active_sets(space):
        up, _, _, ok = _torus_search(T.matrix @ inv, R, 0.0, 0.0, grid, max_cells, target=target)
        upper = max(upper, up)
        converged = converged and ok
    LOG.debug('Certified upper bound %.12g (converged %s)', upper, converged)
    return upper, converged


def l2_identity_operator(space, mu):
    """I_{inf,2} : X -> L_2(mu) written in an orthonormal basis of the range"""
    G = spaces.l2_gram(space, mu)
    R = numerics.range_factor(G)
    if R.shape[0] == 0:
        raise ContractViolation('Measure vanishes on the space', support=list(mu.support))
    return OperatorRep(space, R)


def compose_project(T, P, warning_handler=None):
    P = np.atleast_2d(np.asarray(P))
    if P.shape[1] != T.target_dim:
        raise ContractViolation('Projection width must equal the target dimension',
                                shape=list(P.shape), target_dim=T.target_dim)
    defect = float(np.max(np.abs(P @ numerics.adjoint(P) - np.eye(P.shape[0]))))
    if defect > 1e-4:
        raise ContractViolation('Projection rows are not orthonormal', defect=defect)
    if defect > ORTHONORMAL_TOL:
        P, adjustment = numerics.orthonormalize_rows(P)
        if adjustment > ADJUSTMENT_WARN:
            warn(warning_handler, 'Projection re-orthonormalized (adjustment %.3g)' % adjustment,
                 adjustment=adjustment)
    return OperatorRep(T.source, P @ T.matrix)


def left_compose(A, T):
    """Hilbert-space map A followed after T; no isometry requirement"""
    return OperatorRep(T.source, np.asarray(A) @ T.matrix)


def restrict(T, coefficients, source):
    """T composed with the map source -> T.source given by a coefficient matrix"""
    return OperatorRep(source, T.matrix @ np.asarray(coefficients))


def sup_map_norm(source, target, coefficients):
    """Exact norm of the map between real sup spaces given by a coefficient matrix"""
    if source.is_complex or target.is_complex:
        raise ContractViolation('Exact norms of maps between sup spaces need real fields')
    C = np.asarray(coefficients)
    ext = spaces.extreme_points(source)
    return float(np.max(spaces.norm_eval(target, C @ ext.points.T)))


def adjoint_via_dual(T, resolution=spaces.DEFAULT_RESOLUTION):
    """
    Banach adjoint under the bilinear pairing.

    An OperatorRep X -> l_2^k becomes the HilbertDomainRep l_2^k -> X* with
    X* realized by dual_embed; a HilbertDomainRep l_2^k -> X becomes the
    OperatorRep X* -> l_2^k. In both directions the matrix is transposed so
    that <T*h, x> = <h, Tx>.
    """
    if isinstance(T, OperatorRep):
        return HilbertDomainRep(spaces.dual_embed(T.source, resolution), T.matrix.T)
    if isinstance(T, HilbertDomainRep):
        return OperatorRep(spaces.dual_embed(T.target, resolution), T.matrix.T)
    raise ContractViolation('Adjoints are defined for OperatorRep and HilbertDomainRep only')


def random_operator(space, k, rng):
    shape = (k, space.dim)
    M = rng.standard_normal(shape)
    if space.is_complex:
        M = M + 1j * rng.standard_normal(shape)
    return OperatorRep(space, M)
