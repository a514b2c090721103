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
2-summing norms of operators T : X -> l_2^k.

The primal side maximizes sum ||Mc_i||^2 over vector systems whose square
function sum |Bc_i|^2 stays below one; the dual side minimizes the Pietsch
constant over probability measures on the ambient points. Any feasible
system bounds pi_2(T) from below and any measure bounds it from above.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import linalg, optimize

from ansible_collections.numlab.summing.plugins.module_utils import numerics, operators, spaces
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, warn


LOG = logging.getLogger(__name__)

DEFAULT_RESTARTS = 20
DEFAULT_TOL = 1e-9
DEFAULT_GAP = 1e-6
BARRIER_MAX_POINTS = 256
SUBGRADIENT_ITERATIONS = 200
P_SCHEDULE = (8.0, 32.0, 128.0, 512.0)
LBFGS_ITERATIONS = 300
REFUTATION_FACTOR = 10.0
RATIO_TOL = 1e-9
MAX_SUBSETS = 64
SQUARE_FUNCTION_SWEEPS = 10000
SQUARE_FUNCTION_TOL = 1e-9
GRID_STEPS = 61
GRID_CELLS = 120
GRID_MAX_POINTS = 4
GRID_MAX_DIM = 2
GRID_DET_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class WitnessSystem:
    """Columns c_i of vectors with max_k sum_i |(Bc_i)(k)|^2 <= 1"""
    space: spaces.SupSpace
    vectors: np.ndarray

    def __post_init__(self):
        C = np.array(self.vectors, dtype=self.space.dtype)
        if C.ndim == 1:
            C = C.reshape(-1, 1)
        C.setflags(write=False)
        object.__setattr__(self, 'vectors', C)

    @property
    def size(self):
        return self.vectors.shape[1]

    @property
    def square_function(self):
        return np.sum(np.abs(self.space.basis @ self.vectors) ** 2, axis=1)

    def objective(self, T):
        return float(np.sum(np.abs(T.matrix @ self.vectors) ** 2))

    def value(self, T):
        return float(np.sqrt(self.objective(T)))


@dataclass(frozen=True, eq=False)
class PietschCertificate:
    mu: spaces.MeasureWeights
    value: float
    slack: float
    converged: bool = True


@dataclass(frozen=True, eq=False)
class Pi2Certificate:
    lower: float
    witness: WitnessSystem
    upper: float
    pietsch: PietschCertificate
    converged: bool = True

    @property
    def gap(self):
        return self.upper - self.lower


@dataclass(frozen=True, eq=False)
class RatioCandidate:
    operator: operators.OperatorRep
    pi2_lower: float
    witness: WitnessSystem
    norm: operators.NormCertificate
    origin: str

    @property
    def ratio(self):
        return self.pi2_lower / self.norm.upper if self.norm.upper > 0 else 0.0

    @property
    def gap(self):
        return self.norm.gap


@dataclass(frozen=True, eq=False)
class DefectResult:
    ratio: float
    witness: Optional[RatioCandidate]
    candidates: List[RatioCandidate] = field(default_factory=list)

    @property
    def gaps(self):
        return self.witness.gap if self.witness is not None else 0.0


# Pietsch side

def _gram(B, nu):
    G = numerics.adjoint(B) @ (nu[:, None] * B)
    return (G + numerics.adjoint(G)) / 2


def pietsch_value(T, mu):
    """The least C with ||Tc||^2 <= C^2 int |Bc|^2 dmu, with its feasibility slack"""
    A = T.gram
    G = spaces.l2_gram(T.source, mu)
    value2 = numerics.pencil_max_eig(A, G)
    if not np.isfinite(value2):
        return PietschCertificate(mu, float('inf'), float('-inf'), converged=False)
    _, margin = numerics.psd_check(value2 * G - A)
    return PietschCertificate(mu, float(np.sqrt(value2)), margin)


def _subgradient(A, B, nu, target, iterations):
    """Projected subgradient with Polyak steps on nu -> lambda_max(A, G(nu))"""
    best_phi, best_nu = float('inf'), nu
    for _ in range(iterations):
        phi, v = numerics.pencil_top(A, _gram(B, nu))
        if not np.isfinite(phi):
            nu = (nu + best_nu) / 2
            continue
        if phi < best_phi:
            best_phi, best_nu = phi, nu
        g = -phi * np.abs(B @ v) ** 2
        g = g - np.mean(g)
        gg = float(g @ g)
        if gg <= 1e-30 or phi - target <= 1e-15 * max(phi, 1.0):
            break
        nu = numerics.project_simplex(nu - (phi - target) / gg * g)
    return best_phi, best_nu


def _barrier(A, B, mu, tol=1e-11, outer=24, inner=60):
    """
    Log-barrier Newton method for min sum(mu) s.t. B*diag(mu)B - A > 0, mu > 0.

    Returns (mu, W) with W = S^-1 / t at the last center, a near-optimal
    point of the primal problem max tr(AW) s.t. diag(BWB*) <= 1. Returns
    None when the start is not strictly feasible; mu stays feasible
    throughout, and W is None when the Newton system breaks down.
    """
    N, n = B.shape
    Bh = numerics.adjoint(B)
    m = N + n

    def slack(mu):
        return Bh @ (mu[:, None] * B) - A

    def barrier(mu, t):
        if np.any(mu <= 0):
            return None
        try:
            L = linalg.cholesky(slack(mu), lower=True)
        except linalg.LinAlgError:
            return None
        return t * np.sum(mu) - 2 * np.sum(np.log(np.real(np.diag(L)))) - np.sum(np.log(mu))

    t = m / np.sum(mu)
    if barrier(mu, t) is None:
        LOG.debug('Barrier start is not strictly feasible')
        return None
    try:
        for _ in range(outer):
            for _ in range(inner):
                Sinv = linalg.inv(slack(mu))
                K = B @ Sinv @ Bh
                grad = t - np.real(np.diag(K)) - 1 / mu
                H = np.abs(K) ** 2 + np.diag(1 / mu ** 2)
                step = -linalg.solve(H, grad, assume_a='pos')
                decrement = -float(grad @ step)
                if not np.isfinite(decrement) or decrement / 2 < 1e-12:
                    break
                f0 = barrier(mu, t)
                s = 1.0
                while s > 1e-12:
                    f1 = barrier(mu + s * step, t)
                    if f1 is not None and f1 <= f0 - 0.25 * s * decrement:
                        break
                    s *= 0.5
                else:
                    break
                mu = mu + s * step
            if m / t < tol * np.sum(mu):
                break
            t *= 8
        Sinv = linalg.inv(slack(mu))
    except (linalg.LinAlgError, ValueError) as err:
        LOG.debug('Barrier Newton step failed: %s', err)
        return mu, None
    W = Sinv / t
    return mu, (W + numerics.adjoint(W)) / 2


def _dual_solve(T, tol=DEFAULT_TOL, restarts=DEFAULT_RESTARTS, seed=0, starts=(), target=None):
    """(PietschCertificate, primal Gram or None)"""
    space = T.source
    N = space.ambient
    B = space.basis
    A = T.gram
    if not np.any(T.matrix):
        mu = spaces.MeasureWeights.uniform(N)
        return PietschCertificate(mu, 0.0, 0.0), None
    if target is None:
        target = operators.norm_lower(T, seed=seed)[0] ** 2
    rng = np.random.default_rng(seed)
    uniform = np.full(N, 1.0 / N)
    candidates = [uniform] + [np.asarray(s.weights if isinstance(s, spaces.MeasureWeights) else s) for s in starts]
    barrier_ok = N <= BARRIER_MAX_POINTS
    if not barrier_ok:
        candidates.extend(rng.dirichlet(np.ones(N)) for _ in range(restarts))
    iterations = SUBGRADIENT_ITERATIONS if N <= 64 else SUBGRADIENT_ITERATIONS // 4
    best_phi, best_nu = float('inf'), uniform
    for nu in candidates:
        phi, nu = _subgradient(A, B, nu, target, iterations)
        if phi < best_phi:
            best_phi, best_nu = phi, nu
    W = None
    if barrier_ok:
        nu = 0.9 * best_nu + 0.1 * uniform
        phi, _ = numerics.pencil_top(A, _gram(B, nu))
        solved = _barrier(A, B, 1.1 * phi * nu, tol=tol) if np.isfinite(phi) else None
        if solved is None:
            LOG.debug('Barrier unavailable, keeping the subgradient measure')
        else:
            mu, W = solved
            nu = mu / np.sum(mu)
            phi, _ = numerics.pencil_top(A, _gram(B, nu))
            if phi < best_phi:
                best_phi, best_nu = phi, nu
    cert = pietsch_value(T, spaces.MeasureWeights.normalized(best_nu))
    LOG.debug('Pietsch bound %.12g (barrier %s)', cert.value, barrier_ok)
    return cert, W


def pi2_upper(T, tol=DEFAULT_TOL, restarts=DEFAULT_RESTARTS, seed=0, starts=()):
    """
    Upper bound for pi_2(T) by a Pietsch measure.

    The returned value is recomputed from the measure, so it bounds pi_2(T)
    whatever the optimizer did. Measures in starts seed the search.
    """
    cert, _ = _dual_solve(T, tol=tol, restarts=restarts, seed=seed, starts=starts)
    return cert


# Primal side

def _pack(C):
    return np.concatenate([C.real.ravel(), C.imag.ravel()]) if np.iscomplexobj(C) else C.ravel()


def _unpack(x, shape, cplx):
    if cplx:
        half = x.size // 2
        return (x[:half] + 1j * x[half:]).reshape(shape)
    return x.reshape(shape)


def _smoothed(x, A, B, shape, cplx, p):
    """-log ||MC||^2 + (1/p) log sum_k s_k^p with s the square function"""
    C = _unpack(x, shape, cplx)
    AC = A @ C
    F = float(np.real(np.sum(np.conj(C) * AC)))
    BC = B @ C
    s = np.sum(np.abs(BC) ** 2, axis=1)
    smax = float(np.max(s))
    if F <= 0 or smax <= 0:
        return 1e6, np.zeros_like(x)
    r = (s / smax) ** p
    total = float(np.sum(r))
    f = -np.log(F) + np.log(smax) + np.log(total) / p
    w = (s / smax) ** (p - 1) / (smax * total)
    G = -AC / F + numerics.adjoint(B) @ (w[:, None] * BC)
    return f, _pack(2 * G)


def _normalized(space, C):
    s = np.max(np.sum(np.abs(space.basis @ C) ** 2, axis=1))
    return C / np.sqrt(s) if s > 0 else C


def _ascent(T, C0):
    space = T.source
    A = T.gram
    cplx = space.is_complex
    x = _pack(np.asarray(C0, dtype=space.dtype))
    for p in P_SCHEDULE:
        x, _, _ = optimize.fmin_l_bfgs_b(_smoothed, x, args=(A, space.basis, C0.shape, cplx, p),
                                         maxiter=LBFGS_ITERATIONS)
    return _normalized(space, _unpack(x, C0.shape, cplx))


def witness_from_gram(T, W, n_vec=None):
    """k vectors realizing tr(AW) from a feasible primal Gram matrix"""
    space = T.source
    k = n_vec or T.target_dim
    w, U = linalg.eigh((W + numerics.adjoint(W)) / 2)
    C = U * np.sqrt(np.maximum(w, 0.0))
    _, _, Vh = np.linalg.svd(T.matrix @ C)
    C = C @ numerics.adjoint(Vh)[:, :min(k, C.shape[1])]
    return WitnessSystem(space, _normalized(space, C))


def _system(space, vectors):
    if isinstance(vectors, WitnessSystem):
        return vectors
    return WitnessSystem(space, _normalized(space, np.asarray(vectors, dtype=space.dtype).reshape(space.dim, -1)))


def pi2_lower(T, n_vec=None, restarts=DEFAULT_RESTARTS, seed=0, starts=()):
    """
    Lower bound for pi_2(T) from a feasible vector system.

    Candidates are the norm witness, the supplied starts and one smoothed
    ascent per restart, each seeded by a child of SeedSequence(seed); the
    best is kept with ties going to the earlier candidate. Returns
    (sqrt(sum ||Mc_i||^2), WitnessSystem).
    """
    space = T.source
    k = n_vec or T.target_dim
    if k < 1:
        raise ContractViolation('Witness systems need at least one vector', n_vec=k)
    _, c = operators.norm_lower(T, seed=seed)
    candidates = [_system(space, c)]
    candidates.extend(_system(space, s) for s in starts)
    if np.any(T.matrix):
        for child in np.random.SeedSequence(seed).spawn(restarts):
            rng = np.random.default_rng(child)
            C0 = rng.standard_normal((space.dim, k))
            if space.is_complex:
                C0 = C0 + 1j * rng.standard_normal((space.dim, k))
            candidates.append(WitnessSystem(space, _ascent(T, C0)))
    best = candidates[0]
    for cand in candidates[1:]:
        if cand.objective(T) > best.objective(T):
            best = cand
    return best.value(T), best


def pi2_certify(T, gap=DEFAULT_GAP, restarts=DEFAULT_RESTARTS, seed=0, rounds=3, tol=DEFAULT_TOL,
                starts=(), measures=(), warning_handler=None):
    """
    Sandwich pi_2(T) between a witness system and a Pietsch measure.

    Each round doubles the primal restarts until the gap closes; the
    certificate is returned either way, flagged when it did not.
    """
    upper, W = _dual_solve(T, tol=tol, restarts=restarts, seed=seed, starts=measures)
    starts = list(starts)
    if W is not None:
        scale = np.max(np.real(np.einsum('ij,jk,ik->i', T.source.basis, W, np.conj(T.source.basis))))
        if scale > 0:
            starts.append(witness_from_gram(T, W / scale))
    lower, witness = pi2_lower(T, restarts=restarts, seed=seed, starts=starts)
    for _ in range(rounds - 1):
        if upper.value - lower <= gap:
            break
        restarts *= 2
        lower, witness = pi2_lower(T, restarts=restarts, seed=seed, starts=starts)
    converged = upper.value - lower <= gap
    if not converged:
        warn(warning_handler, 'pi_2 gap %.3g above the requested %.3g' % (upper.value - lower, gap),
             gap=upper.value - lower)
    LOG.info('pi_2 in [%.12g, %.12g]', lower, upper.value)
    return Pi2Certificate(lower=lower, witness=witness, upper=max(upper.value, lower), pietsch=upper,
                          converged=converged)


# Brute-force reference

@dataclass(frozen=True, eq=False)
class GridBracket:
    lower: float
    upper: float
    vectors: np.ndarray
    mu: spaces.MeasureWeights

    @property
    def gap(self):
        return self.upper - self.lower


def _simplex_grid(N, cells):
    """All measures on N points with weights in multiples of 1/cells"""
    rows = [np.diff(np.concatenate([[0], cuts, [cells]]))
            for cuts in itertools.combinations_with_replacement(range(cells + 1), N - 1)]
    return np.array(rows, dtype=float) / cells


def _factor_grid(n, cplx, steps):
    """Lower triangular factors L with real nonnegative diagonal on a cube grid"""
    full = np.linspace(-1.0, 1.0, steps)
    half = np.linspace(0.0, 1.0, steps // 2 + 1)
    slots = [(i, j) for i in range(n) for j in range(i + 1)]
    axes = []
    for i, j in slots:
        axes.append(half if i == j else full)
        if cplx and i != j:
            axes.append(full)
    values = np.array(list(itertools.product(*axes)))
    L = np.zeros((len(values), n, n), dtype=complex if cplx else float)
    col = 0
    for i, j in slots:
        L[:, i, j] = values[:, col]
        col += 1
        if cplx and i != j:
            L[:, i, j] = L[:, i, j] + 1j * values[:, col]
            col += 1
    return L


def pi2_grid(T, steps=GRID_STEPS, cells=GRID_CELLS):
    """
    Brute-force bracket for pi_2(T) on spaces with N <= 4 and n <= 2.

    The lower end is the best square-function normalized system whose Gram
    factor lies on a cube grid, the upper end the best Pietsch constant over
    measures on a simplex grid. No optimizer is involved.
    """
    space = T.source
    N, n = space.ambient, space.dim
    if N > GRID_MAX_POINTS or n > GRID_MAX_DIM:
        raise ContractViolation('Grid bracket is limited to small spaces', ambient=N, dim=n)
    B, M = space.basis, T.matrix
    L = _factor_grid(n, space.is_complex, steps if not space.is_complex else max(steps // 3, 5) | 1)
    square = np.max(np.sum(np.abs(np.einsum('kn,pnj->pkj', B, L)) ** 2, axis=2), axis=1)
    value = np.sum(np.abs(np.einsum('mn,pnj->pmj', M, L)) ** 2, axis=(1, 2))
    ok = square > 1e-12
    ratios = np.where(ok, value / np.where(ok, square, 1.0), 0.0)
    best = int(np.argmax(ratios))
    vectors = L[best] / np.sqrt(square[best])

    weights = _simplex_grid(N, cells)
    G = np.einsum('kn,pk,km->pnm', np.conj(B), weights, B)
    detG = np.real(np.linalg.det(G))
    scale = max(float(np.max(np.abs(G))), 1.0)
    usable = detG > GRID_DET_FLOOR * scale ** n
    tops = np.full(len(weights), np.inf)
    if np.any(usable):
        eig = np.linalg.eigvals(np.linalg.solve(G[usable], np.broadcast_to(T.gram, G[usable].shape)))
        tops[usable] = np.max(np.real(eig), axis=1)
    j = int(np.argmin(tops))
    mu = spaces.MeasureWeights.normalized(weights[j])
    upper = pietsch_value(T, mu).value
    lower = float(np.linalg.norm(M @ vectors))
    LOG.debug('Grid bracket [%.12g, %.12g] from %d factors and %d measures', lower, upper, len(L), len(weights))
    return GridBracket(lower=lower, upper=max(upper, lower), vectors=vectors, mu=mu)


# Factorization

def pietsch_factorize(T, cert, witness=None):
    """
    S with T = S o I_{inf,2}, where I_{inf,2} maps X into L_2(mu) written in
    an orthonormal basis of its range. ||S|| equals the Pietsch value of mu.
    The second value is the isometry defect on the image of the witness.
    """
    if cert.slack < -1e-9 or not np.isfinite(cert.value):
        raise ContractViolation('Pietsch certificate is infeasible', slack=cert.slack)
    R = operators.l2_identity_operator(T.source, cert.mu).matrix
    S = T.matrix @ np.linalg.pinv(R)
    if np.max(np.abs(S @ R - T.matrix)) > 1e-8 * max(1.0, np.max(np.abs(T.matrix))):
        raise ContractViolation('Operator does not vanish on the null space of the measure')
    if witness is None:
        _, witness = pi2_lower(T, restarts=4)
    return S, isometry_defect(S, R, witness.vectors, cert.value)


def isometry_defect(S, R, vectors, value):
    """Distance of S/value from an isometry on span(R vectors)"""
    if value <= 0:
        return 0.0
    Y = R @ vectors
    if not np.any(Y):
        return 0.0
    U, sv, _ = np.linalg.svd(Y, full_matrices=False)
    Q = U[:, sv > 1e-9 * sv[0]]
    alpha = S / value
    D = numerics.adjoint(Q) @ (numerics.adjoint(alpha) @ alpha) @ Q - np.eye(Q.shape[1])
    return numerics.spectral_norm(D)


def onto_isometry_check(u, restarts=DEFAULT_RESTARTS, seed=0):
    """
    For onto u : X -> l_2^n with pi_2(u) = 1, the Pietsch bounds of P u on
    the coordinate hyperplanes and, when all stay below one, the isometry
    defect of the factor on the whole of L_2(mu) restricted to X.
    """
    n = u.target_dim
    if np.linalg.matrix_rank(u.matrix) < n:
        raise ContractViolation('Operator is not onto', rank=int(np.linalg.matrix_rank(u.matrix)))
    cert = pi2_upper(u, restarts=restarts, seed=seed)
    projections = []
    for j in range(n):
        P = np.delete(np.eye(n), j, axis=0)
        projections.append(pi2_upper(operators.compose_project(u, P), restarts=restarts, seed=seed).value)
    premise = all(p < cert.value - 1e-9 for p in projections)
    R = operators.l2_identity_operator(u.source, cert.mu).matrix
    S = u.matrix @ np.linalg.pinv(R)
    defect = isometry_defect(S, R, np.eye(u.source.dim), cert.value)
    return dict(pi2_upper=cert.value, projection_uppers=projections, premise=premise, isometry_defect=defect)


def maximal_distance_operator(space, inscribed_form):
    """u = n^-1/2 v^-1 for the maximal-volume ellipsoid map v; pi_2(u) = 1"""
    Q = numerics.as_hermitian(inscribed_form, tol=1e-8)
    w, U = linalg.eigh(Q)
    root = (U * np.sqrt(w)) @ numerics.adjoint(U)
    return operators.OperatorRep(space, root / np.sqrt(space.dim))


def sandwich_ideal_check(T1, T2, coefficients, source, gap=DEFAULT_GAP, restarts=DEFAULT_RESTARTS, seed=0):
    """pi_2(T1 T2 T3) <= ||T1|| pi_2(T2) ||T3|| with T3 given by coefficients from source"""
    T1 = np.atleast_2d(np.asarray(T1))
    inner = pi2_certify(T2, gap=gap, restarts=restarts, seed=seed)
    outer = pi2_certify(operators.left_compose(T1, operators.restrict(T2, coefficients, source)),
                        gap=gap, restarts=restarts, seed=seed)
    norm1 = numerics.spectral_norm(T1)
    norm3 = operators.sup_map_norm(source, T2.source, coefficients)
    bound = norm1 * inner.upper * norm3
    return dict(composed=[outer.lower, outer.upper], factor=[inner.lower, inner.upper], left_norm=norm1,
                right_norm=norm3, bound=bound, holds=outer.lower <= bound + outer.gap + inner.gap + 1e-9)


# Square-function systems and the defect ratio

def square_function_system(space, support, rank=None, sweeps=SQUARE_FUNCTION_SWEEPS, tol=SQUARE_FUNCTION_TOL,
                           seed=0):
    """
    Gram matrix W >= 0 of rank <= rank with (BWB*)_kk = 1 on support and
    <= 1 elsewhere, by alternating projections.

    Returns (WitnessSystem, residual) with residual the largest deviation
    from one on the support after scaling to feasibility.
    """
    B = space.basis
    N, n = B.shape
    rank = rank or n
    support = sorted(support)
    dyads = np.einsum('ki,kj->kij', np.conj(B), B)
    flat = dyads.reshape(N, n * n)
    A = np.hstack([flat.real, flat.imag]) if space.is_complex else flat.real
    rng = np.random.default_rng(seed)
    W = np.eye(n, dtype=space.dtype) + 0.1 * rng.standard_normal((n, n))
    W = (W + numerics.adjoint(W)) / 2
    residual = float('inf')
    for sweep in range(sweeps):
        d = np.real(np.einsum('kij,ij->k', np.conj(dyads), W))
        active = set(support) | {k for k in range(N) if d[k] > 1}
        idx = sorted(active)
        excess = d[idx] - 1
        step = np.linalg.lstsq(A[idx], excess, rcond=None)[0]
        if space.is_complex:
            step = step[:n * n] + 1j * step[n * n:]
        W = W - step.reshape(n, n)
        W = (W + numerics.adjoint(W)) / 2
        w, U = linalg.eigh(W)
        w = np.maximum(w, 0.0)
        w[:max(n - rank, 0)] = 0.0
        W = (U * w) @ numerics.adjoint(U)
        d = np.real(np.einsum('kij,ij->k', np.conj(dyads), W))
        residual = max(float(np.max(np.abs(d[support] - 1))) if support else 0.0,
                       float(np.max(d - 1)))
        if residual <= tol:
            break
    d = np.real(np.einsum('kij,ij->k', np.conj(dyads), W))
    W = W / max(float(np.max(d)), 1e-300)
    d = d / max(float(np.max(d)), 1e-300)
    w, U = linalg.eigh(W)
    C = U[:, w > 1e-12 * max(w[-1], 1e-300)] * np.sqrt(w[w > 1e-12 * max(w[-1], 1e-300)])
    if C.shape[1] == 0:
        C = np.zeros((n, 1), dtype=space.dtype)
    final = float(np.max(np.abs(d[support] - 1))) if support else 0.0
    LOG.debug('Square function on %s: residual %.3g after %d sweeps', support, final, sweep + 1)
    return WitnessSystem(space, C), final


def subsets_by_size(N, limit=MAX_SUBSETS):
    count = 0
    for size in range(N, 0, -1):
        for K0 in itertools.combinations(range(N), size):
            if count >= limit:
                return
            count += 1
            yield K0


def _score(T, witness_starts, gap, seed, strict_norm):
    lower, witness = pi2_lower(T, restarts=2, seed=seed, starts=witness_starts)
    if strict_norm:
        norm = operators.op_norm(T, gap=gap, seed=seed, strict=False)
    else:
        value, c = operators.norm_lower(T, seed=seed)
        norm = operators.NormCertificate(value, c, value, 'estimate', converged=False)
    return lower, witness, norm


def structured_candidates(space, k, seed=0, limit=MAX_SUBSETS, tries=3):
    """Operators Q o I_{inf,2} over uniform measures on subsets, with square-function witnesses"""
    found = []
    for K0 in subsets_by_size(space.ambient, limit):
        mu = spaces.MeasureWeights.on_subset(space.ambient, K0)
        I = operators.l2_identity_operator(space, mu)
        for attempt in range(tries):
            system, residual = square_function_system(space, K0, rank=k, seed=seed + attempt)
            if residual > 1e-6:
                continue
            U, _, _ = np.linalg.svd(I.matrix @ system.vectors, full_matrices=False)
            T = operators.OperatorRep(space, numerics.adjoint(U[:, :k]) @ I.matrix)
            found.append((T, system, 'subset%s/%d' % (list(K0), attempt)))
    return found


def defect_ratio(space, k, restarts=DEFAULT_RESTARTS, seed=0, gap=DEFAULT_GAP, polish=3, subsets=MAX_SUBSETS):
    """
    Certified lower bound for sup pi_2(T)/||T|| over T : X -> l_2^k.

    Candidates are the evaluation functionals, the structured subset
    operators and seeded random matrices; the most promising random ones are
    polished by Nelder-Mead on the matrix entries. Every ratio reported is a
    pi_2 lower bound over a certified norm upper bound.
    """
    if k < 1:
        raise ContractViolation('Target dimension must be positive', k=k)
    pool = []
    for j in range(space.ambient):
        pool.append((operators.OperatorRep(space, space.basis[j:j + 1, :]), (), 'evaluation%d' % j))
    for T, system, origin in structured_candidates(space, k, seed=seed, limit=subsets):
        pool.append((T, (system,), origin))
    children = np.random.SeedSequence(seed).spawn(restarts)
    scored = []
    for index, child in enumerate(children):
        rng = np.random.default_rng(child)
        T = operators.random_operator(space, k, rng)
        lower, _, norm = _score(T, (), gap, index, strict_norm=False)
        scored.append((lower / norm.upper if norm.upper > 0 else 0.0, index, T))
    scored.sort(key=lambda item: (-item[0], item[1]))
    for estimate, index, T in scored[:polish]:
        pool.append((_polish_operator(T, index), (), 'restart%d' % index))
    for estimate, index, T in scored[polish:]:
        pool.append((T, (), 'restart%d' % index))

    candidates = []
    for T, starts, origin in pool:
        lower, witness, norm = _score(T, starts, gap, seed, strict_norm=True)
        candidates.append(RatioCandidate(T, lower, witness, norm, origin))
    best = max(candidates, key=lambda c: c.ratio)
    LOG.info('Defect ratio for k=%d: %.12g (%s)', k, best.ratio, best.origin)
    return DefectResult(ratio=best.ratio, witness=best, candidates=candidates)


def _polish_operator(T, seed):
    space = T.source
    shape = T.matrix.shape
    cplx = space.is_complex

    def f(x):
        M = _unpack(x, shape, cplx)
        if not np.any(M):
            return 0.0
        S = operators.OperatorRep(space, M)
        lower, _, norm = _score(S, (), 0.0, seed, strict_norm=False)
        return -lower / norm.upper

    res = optimize.minimize(f, _pack(T.matrix), method='Nelder-Mead',
                            options=dict(maxiter=60 * T.matrix.size, xatol=1e-8, fatol=1e-10))
    return operators.OperatorRep(space, _unpack(res.x, shape, cplx))


def refutes(result, factor=REFUTATION_FACTOR):
    """The refutation rule: ratio >= 1 + factor x (certificate gaps)"""
    return result.witness is not None and result.ratio >= 1 + factor * result.gaps and result.ratio > 1 + RATIO_TOL
