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
Finite-dimensional normed spaces given as subspaces of sup-normed l_inf^N.

A space is the column span of an N x n basis matrix B; an element is a
coefficient vector c and its norm is max_k |(Bc)(k)|.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from ansible_collections.numlab.summing.plugins.module_utils import numerics
from ansible_collections.numlab.summing.plugins.module_utils.errors import (
    ContractViolation, PreconditionFailed, ResolutionRefused
)


LOG = logging.getLogger(__name__)

RANK_TOL = 1e-10
NORM_TOL = 1e-10
MAX_ERROR_BOUND = 0.1
MAX_VERTEX_COMBOS = 200000
MAX_TORUS_POINTS = 2000000
DEFAULT_RESOLUTION = 64

EXACT = 'exact-vertices'
TORUS = 'torus-samples'
DUAL_ROWS = 'dual-rows'


def _frozen(array):
    a = np.array(array)
    a.setflags(write=False)
    return a


def _rank_ok(M, tol=RANK_TOL):
    if M.size == 0:
        return False
    s = np.linalg.svd(M, compute_uv=False)
    return s[-1] >= tol * s[0] and s[0] > 0


@dataclass(frozen=True, eq=False)
class Hull:
    """Ball(X) lies inside inflation x the circled absolute convex hull of points."""
    points: np.ndarray
    inflation: float = 1.0
    error_bound: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'points', _frozen(self.points))


@dataclass(frozen=True, eq=False)
class SupSpace:
    field: str
    basis: np.ndarray
    label: str = ''
    hull: Optional[Hull] = None

    def __post_init__(self):
        B = numerics.as_field(self.basis, self.field)
        if B.ndim != 2:
            raise ContractViolation('Basis must be an N x n matrix', shape=list(B.shape))
        N, n = B.shape
        if n < 1 or n > N:
            raise ContractViolation('Basis needs 1 <= n <= N columns', ambient=N, dim=n)
        if not _rank_ok(B):
            raise ContractViolation('Basis columns are linearly dependent', label=self.label)
        object.__setattr__(self, 'basis', _frozen(B))

    @property
    def ambient(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def is_complex(self):
        return self.field == numerics.COMPLEX

    @property
    def dtype(self):
        return numerics.dtype_for(self.field)

    def values(self, coeffs):
        """Function values Bc on the ambient points (columns for a matrix of coefficients)"""
        return self.basis @ np.asarray(coeffs)

    def norm(self, coeffs):
        return norm_eval(self, coeffs)

    def __repr__(self):
        return 'SupSpace(%s, N=%d, n=%d%s)' % (self.field, self.ambient, self.dim,
                                                ', %s' % self.label if self.label else '')


@dataclass(frozen=True, eq=False)
class MeasureWeights:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ContractViolation('Measure weights must be a nonempty vector')
        if np.any(w < 0) or abs(float(np.sum(w)) - 1.0) > 1e-12:
            raise ContractViolation('Measure weights must be a probability vector', total=float(np.sum(w)))
        object.__setattr__(self, 'weights', _frozen(w))

    @classmethod
    def normalized(cls, weights):
        w = np.maximum(np.asarray(weights, dtype=np.float64), 0.0)
        return cls(w / np.sum(w))

    @classmethod
    def uniform(cls, N):
        return cls(np.full(N, 1.0 / N))

    @classmethod
    def point(cls, N, k):
        w = np.zeros(N)
        w[k] = 1.0
        return cls(w)

    @classmethod
    def on_subset(cls, N, subset):
        w = np.zeros(N)
        w[list(subset)] = 1.0 / len(subset)
        return cls(w)

    @property
    def support(self):
        return tuple(int(k) for k in np.flatnonzero(self.weights > 0))

    def __len__(self):
        return self.weights.size


@dataclass(frozen=True, eq=False)
class ExtremeSet:
    kind: str
    points: np.ndarray
    resolution: Optional[int] = None
    lipschitz_bound: float = 0.0
    spacing: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'points', _frozen(self.points))

    @property
    def error_bound(self):
        """Norm distance from any extreme point to the nearest stored point, up to phase"""
        if self.kind == EXACT:
            return 0.0
        return self.lipschitz_bound * self.spacing

    def __len__(self):
        return self.points.shape[0]


# Named spaces

def linf(n, field=numerics.REAL):
    return SupSpace(field, np.eye(n), label='linf%d' % n)


def l1_signs(n):
    """Real l_1^n inside l_inf^(2^(n-1)) through the sign functionals with first entry +1"""
    rows = [(1.0,) + s for s in itertools.product((1.0, -1.0), repeat=n - 1)]
    return SupSpace(numerics.REAL, np.array(rows), label='l1_%d' % n)


def normal_form(a, field=numerics.REAL):
    """span{e_i + a_i e_(n+1)} inside l_inf^(n+1)"""
    a = np.asarray(a)
    n = a.size
    B = np.vstack([np.eye(n), a.reshape(1, n)])
    return SupSpace(field, B, label='normal_form')


def example_plane(field=numerics.REAL):
    """span{(1,0,1/sqrt2), (0,1,1/sqrt2)} inside l_inf^3"""
    return normal_form([1 / np.sqrt(2), 1 / np.sqrt(2)], field)


def disk_space(m):
    """Real plane whose norm is the Euclidean norm up to a factor cos(pi/2m)"""
    theta = np.pi * np.arange(m) / m
    return SupSpace(numerics.REAL, np.column_stack([np.cos(theta), np.sin(theta)]), label='disk%d' % m)


# Operations

def norm_eval(space, coeffs):
    c = np.asarray(coeffs)
    if c.shape[0] != space.dim:
        raise ContractViolation('Coefficient vector has the wrong dimension', expected=space.dim, got=c.shape[0])
    values = np.abs(space.basis @ c)
    return float(np.max(values)) if c.ndim == 1 else np.max(values, axis=0)


def l2_gram(space, mu):
    if len(mu) != space.ambient:
        raise ContractViolation('Measure size does not match the ambient set', ambient=space.ambient, size=len(mu))
    B = space.basis
    G = numerics.adjoint(B) @ (mu.weights[:, None] * B)
    return (G + numerics.adjoint(G)) / 2


def subspace(space, coefficients, label=None):
    C = numerics.as_field(coefficients, space.field) if not space.is_complex else np.asarray(coefficients, dtype=complex)
    if C.ndim == 1:
        C = C.reshape(-1, 1)
    if C.shape[0] != space.dim or not _rank_ok(C):
        raise ContractViolation('Coefficient matrix must have independent columns in the space', shape=list(C.shape))
    return SupSpace(space.field, space.basis @ C, label=label or 'sub(%s)' % space.label)


def _dedupe(points, tol=1e-8):
    kept = []
    for p in points:
        if not kept or np.min(np.max(np.abs(np.asarray(kept) - p), axis=1)) > tol:
            kept.append(p)
    return np.asarray(kept)


def _real_vertices(space):
    B = space.basis.real
    N, n = B.shape
    combos = itertools.combinations(range(N), n)
    count = _binomial(N, n)
    if count * 2 ** (n - 1) > MAX_VERTEX_COMBOS:
        raise PreconditionFailed('Vertex enumeration too large', ambient=N, dim=n)
    signs = np.array([(1.0,) + s for s in itertools.product((1.0, -1.0), repeat=n - 1)]).T
    found = []
    for S in combos:
        BS = B[list(S), :]
        if not _rank_ok(BS, 1e-12):
            continue
        C = np.linalg.solve(BS, signs)
        norms = np.max(np.abs(B @ C), axis=0)
        for j in np.flatnonzero(norms <= 1 + NORM_TOL):
            c = C[:, j] / norms[j]
            found.extend([c, -c])
    points = _dedupe(found)
    order = np.lexsort(points.T[::-1])
    return points[order]


def _binomial(N, n):
    return math.comb(N, n)


def _torus_grid(m, d):
    phases = np.exp(2j * np.pi * np.arange(m) / m)
    if d == 0:
        return np.ones((1, 1), dtype=complex)
    grid = np.array(list(itertools.product(range(m), repeat=d)))
    Z = np.ones((grid.shape[0], d + 1), dtype=complex)
    Z[:, 1:] = phases[grid]
    return Z


def active_sets(space):
    """Row subsets S with invertible B_S; every extreme point has one among its active rows"""
    B = space.basis
    N, n = B.shape
    for S in itertools.combinations(range(N), n):
        BS = B[list(S), :]
        if _rank_ok(BS, 1e-12):
            inv = np.linalg.inv(BS)
            yield S, inv, B @ inv


def _torus_points(space, m):
    n = space.dim
    Z = _torus_grid(m, n - 1)
    spacing = np.pi / m
    pts = []
    lipschitz = 0.0
    for S, inv, R in active_sets(space):
        if Z.shape[0] * (len(pts) + 1) > MAX_TORUS_POINTS:
            raise ResolutionRefused('Torus sample too large', resolution=m, dim=n)
        L = float(np.max(np.sum(np.abs(R), axis=1)))
        norms = np.max(np.abs(Z @ R.T), axis=1)
        keep = norms <= 1 + L * spacing
        C = (Z[keep] @ inv.T) / norms[keep, None]
        pts.append(C)
        lipschitz = max(lipschitz, 2 * L)
    return np.vstack(pts), lipschitz


def extreme_points(space, resolution=DEFAULT_RESOLUTION):
    """
    Extreme points of the unit ball.

    Real spaces get the exact vertex list, closed under sign. Complex spaces
    get phase samples B_S^-1 zeta over active row sets S and a torus grid of
    the given resolution per circle, together with the Lipschitz bound of the
    map from grid phases to boundary points. Spaces produced by dual_embed
    carry their source rows, which contain every extreme point up to phase.
    """
    if space.hull is not None and (space.is_complex or _binomial(space.ambient, space.dim) > MAX_VERTEX_COMBOS):
        return ExtremeSet(DUAL_ROWS, np.array(space.hull.points),
                          lipschitz_bound=space.hull.error_bound, spacing=1.0)
    if not space.is_complex:
        return ExtremeSet(EXACT, _real_vertices(space))
    if resolution < 2 or resolution & (resolution - 1):
        raise ContractViolation('Resolution must be a power of two', resolution=resolution)
    points, lipschitz = _torus_points(space, resolution)
    LOG.debug('Sampled %d boundary points at resolution %d (lipschitz %.3g)', len(points), resolution, lipschitz)
    return ExtremeSet(TORUS, points, resolution=resolution, lipschitz_bound=lipschitz, spacing=np.pi / resolution)


def dual_embed(space, resolution=DEFAULT_RESOLUTION, max_error=MAX_ERROR_BOUND):
    """
    The dual space as evaluations of dual coefficient vectors at extreme points.

    The k-th ambient coordinate of a functional phi is phi(e_k) = sum_i phi_i e_k,i
    for the k-th extreme point e_k; real points are kept up to sign. The result
    carries the rows of the source basis as its hull, and its error bound.
    Sampled points are genuine unit vectors, so the dual rows remain valid
    norming functionals whatever the error bound; max_error=None accepts any.
    """
    ext = extreme_points(space, resolution)
    if ext.kind == EXACT:
        pts = ext.points
        first = pts[np.arange(len(pts)), np.argmax(np.abs(pts) > NORM_TOL, axis=1)]
        rows = pts[first > 0]
        hull = Hull(space.basis, inflation=1.0, error_bound=0.0)
    else:
        if max_error is not None and ext.error_bound > max_error:
            raise ResolutionRefused('Discretization error bound %.3g exceeds %.3g' % (ext.error_bound, max_error),
                                    error_bound=ext.error_bound, resolution=resolution)
        rows = ext.points
        inflation = 1.0 / (1.0 - ext.error_bound) if ext.error_bound < 1 else float('inf')
        hull = Hull(space.basis, inflation=inflation, error_bound=ext.error_bound)
    return SupSpace(space.field, rows, label='dual(%s)' % space.label, hull=hull)
