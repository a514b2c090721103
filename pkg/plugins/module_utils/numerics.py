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
Field-generic dense kernel: Hermitian eigenproblems, pencils, NNLS and PSD tests.

Scalars and matrices are numpy arrays; the field tag is carried by the dtype
(float64 for the real field, complex128 for the complex field).
"""

import logging

import numpy as np
from scipy import linalg, optimize

from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation


LOG = logging.getLogger(__name__)

REAL = 'real'
COMPLEX = 'complex'
FIELDS = (REAL, COMPLEX)

HERMITIAN_TOL = 1e-12
PENCIL_CUTOFF = 1e-12
PENCIL_LEAK = 1e-10
JACOBI_SWEEPS = 64


def dtype_for(field):
    if field == REAL:
        return np.float64
    if field == COMPLEX:
        return np.complex128
    raise ContractViolation("Unknown scalar field '%s'" % field, field=field)


def field_of(array):
    return COMPLEX if np.iscomplexobj(array) else REAL


def as_field(array, field):
    """Casts an array to the field dtype; complex data with nonzero imaginary part cannot become real"""
    a = np.asarray(array)
    if field == REAL and np.iscomplexobj(a):
        if np.any(np.abs(a.imag) > 0):
            raise ContractViolation('Complex entries in a real-tagged matrix')
        a = a.real
    return np.array(a, dtype=dtype_for(field))


def adjoint(M):
    return np.conj(np.asarray(M)).T


def as_hermitian(H, tol=HERMITIAN_TOL):
    """Validates H as Hermitian (relative tolerance) and returns its exact Hermitian part"""
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ContractViolation('Hermitian form must be square, got shape %s' % (H.shape,))
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    skew = float(np.max(np.abs(H - adjoint(H)))) if H.size else 0.0
    if skew > tol * scale:
        raise ContractViolation('Matrix is not Hermitian', skew=skew)
    return (H + adjoint(H)) / 2


def _jacobi(S):
    """Cyclic Jacobi sweeps on a real symmetric matrix; returns unsorted (w, V)"""
    A = np.array(S, dtype=np.float64)
    n = A.shape[0]
    V = np.eye(n)
    scale = max(float(np.linalg.norm(A)), np.finfo(float).tiny)
    for sweep in range(JACOBI_SWEEPS):
        off = np.sqrt(max(float(np.sum(A * A) - np.sum(np.diag(A) ** 2)), 0.0))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                A[:, [p, q]] = A[:, [p, q]] @ rot
                A[[p, q], :] = rot.T @ A[[p, q], :]
                A[p, q] = A[q, p] = 0.0
                V[:, [p, q]] = V[:, [p, q]] @ rot
    else:
        LOG.warning('Jacobi iteration stopped after %d sweeps', JACOBI_SWEEPS)
    return np.diag(A).copy(), V


def _complex_from_embedding(w, V, n, tol):
    """Collapses the doubled spectrum of the 2n real embedding back to n complex eigenpairs"""
    values = w[0::2].copy()
    vectors = np.zeros((n, n), dtype=np.complex128)
    candidates = V[:n, :] + 1j * V[n:, :]
    scale = max(1.0, float(np.max(np.abs(w))))
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and abs(values[stop] - values[start]) <= tol * scale:
            stop += 1
        block = candidates[:, 2 * start:2 * stop]
        left, _, _ = np.linalg.svd(block)
        vectors[:, start:stop] = left[:, :stop - start]
        values[start:stop] = np.mean(w[2 * start:2 * stop])
        start = stop
    return values, vectors


def herm_eig(H, method='jacobi'):
    """
    Eigen-decomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and a matrix whose columns are
    orthonormal eigenvectors. The default method runs cyclic Jacobi sweeps
    (complex input through the 2n x 2n real embedding); method='lapack'
    defers to scipy for the inner loops of the optimizers.
    """
    H = as_hermitian(H)
    n = H.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=H.dtype)
    if method == 'lapack':
        w, V = linalg.eigh(H)
        return w, V
    if np.iscomplexobj(H):
        S = np.block([[H.real, -H.imag], [H.imag, H.real]])
        w, V = _jacobi(S)
        order = np.argsort(w, kind='stable')
        return _complex_from_embedding(w[order], V[:, order], n, 1e-9)
    w, V = _jacobi(H.real)
    order = np.argsort(w, kind='stable')
    return w[order], V[:, order]


def psd_check(H, tol=1e-10):
    """Returns (ok, margin) with margin the smallest eigenvalue"""
    w, _ = herm_eig(H)
    margin = float(w[0]) if w.size else 0.0
    return margin >= -tol, margin


def _require_psd(A, name):
    w = linalg.eigvalsh(A)
    if w.size and w[0] < -1e-9 * max(1.0, float(np.max(np.abs(w)))):
        raise ContractViolation('%s is not positive semidefinite' % name, min_eigenvalue=float(w[0]))


def pencil_top(A, G):
    """
    Largest generalized eigenvalue of (A, G) together with a top vector v, v*Gv = 1.

    G is restricted to its range (cutoff 1e-12 of its norm); when A acts on
    the discarded null space the value is +inf and the vector spans that leak.
    """
    A = as_hermitian(A, tol=1e-9)
    G = as_hermitian(G, tol=1e-9)
    w, U = linalg.eigh(G)
    anorm = float(np.max(np.abs(A))) if A.size else 0.0
    gscale = float(np.max(np.abs(w))) if w.size else 0.0
    keep = w > PENCIL_CUTOFF * gscale if gscale > 0 else np.zeros(w.shape, dtype=bool)
    null = U[:, ~keep]
    if null.shape[1]:
        leak = A @ null
        if float(np.max(np.abs(leak))) > PENCIL_LEAK * max(1.0, anorm):
            idx = int(np.argmax(np.sum(np.abs(leak) ** 2, axis=0)))
            return float('inf'), null[:, idx]
    if not np.any(keep):
        return 0.0, np.zeros(A.shape[0], dtype=A.dtype)
    Ur = U[:, keep]
    inv_sqrt = 1.0 / np.sqrt(w[keep])
    C = (adjoint(Ur) @ A @ Ur) * np.outer(inv_sqrt, inv_sqrt)
    cw, cv = linalg.eigh((C + adjoint(C)) / 2)
    v = Ur @ (inv_sqrt * cv[:, -1])
    return max(float(cw[-1]), 0.0), v


def pencil_max_eig(A, G):
    """min{c >= 0 : A <= c G}; +inf when null(G) is not inside null(A)"""
    A = as_hermitian(A, tol=1e-9)
    G = as_hermitian(G, tol=1e-9)
    _require_psd(A, 'A')
    _require_psd(G, 'G')
    value, _ = pencil_top(A, G)
    return value


def range_factor(G, cutoff=PENCIL_CUTOFF):
    """R with R*R = G restricted to the range of G (rows = rank)"""
    G = as_hermitian(G, tol=1e-9)
    w, U = linalg.eigh(G)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    keep = w > cutoff * scale if scale > 0 else np.zeros(w.shape, dtype=bool)
    return np.sqrt(w[keep])[:, None] * adjoint(U[:, keep])


def nnls(columns, target):
    """
    Nonnegative least squares, min ||columns w - target|| over w >= 0.

    Runs the Lawson-Hanson active set solver with 10 x (number of columns)
    iterations, falling back to a bounded least-squares solve if it does not
    converge. Returns (weights, residual).
    """
    A = np.asarray_chkfinite(columns, dtype=np.float64)
    b = np.asarray_chkfinite(target, dtype=np.float64)
    if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
        raise ContractViolation('nnls expects a matrix and a matching vector',
                                shape=list(A.shape), target=list(b.shape))
    try:
        weights, residual = optimize.nnls(A, b, maxiter=10 * max(A.shape[1], 1))
    except RuntimeError:
        LOG.debug('Lawson-Hanson did not converge, using bounded least squares')
        weights = optimize.lsq_linear(A, b, bounds=(0, np.inf)).x
        residual = float(np.linalg.norm(A @ weights - b))
    return np.maximum(weights, 0.0), float(residual)


def project_simplex(v):
    """Euclidean projection onto the probability simplex (sort and bisection)"""
    v = np.asarray(v, dtype=np.float64)
    u = np.sort(v)[::-1]
    u_cumsum = np.cumsum(u)
    j1, j2 = 0, u.size - 1
    if u[j2] + (1. - u_cumsum[j2]) / (j2 + 1.) > 0:
        rho = j2
    else:
        while j2 > j1 + 1:
            jm = (j1 + j2) // 2
            if u[jm] + (1. - u_cumsum[jm]) / (jm + 1.) < 0:
                j2 = jm
            else:
                j1 = jm
        rho = j1
    shift = (1. - u_cumsum[rho]) / (rho + 1.)
    return np.maximum(v + shift, 0.0)


def spectral_norm(M):
    M = np.asarray(M)
    return float(np.linalg.norm(M, 2)) if M.size else 0.0


def orthonormalize_rows(P):
    """Nearest matrix with orthonormal rows (polar factor) and the size of the adjustment"""
    P = np.asarray(P)
    U, _, Vh = np.linalg.svd(P, full_matrices=False)
    Q = U @ Vh
    return Q, float(np.max(np.abs(Q - P))) if P.size else 0.0
