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
Complexification of real sup-norm spaces and of operators into l_2^k,
recognition of complexified operators, realification, and the phase normal
form that exhibits a 2-dim subspace of complex l_inf^3 as a complexification.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ansible_collections.numlab.summing.plugins.module_utils import numerics, operators, spaces, summing
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, PreconditionFailed


LOG = logging.getLogger(__name__)

ACTION_TOL = 1e-12
RECOGNITION_TOL = 1e-9
OVERLAP_TOL = 2e-6
DEFAULT_PHASES = 64
FLAT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ComplexificationMap:
    """E_C = E + iE with the complex sup-norm on the same ambient points"""
    real_space: spaces.SupSpace
    complex_space: spaces.SupSpace

    def embed(self, f1, f2):
        return np.asarray(f1) + 1j * np.asarray(f2)

    def split(self, coeffs):
        c = np.asarray(coeffs)
        return c.real.copy(), c.imag.copy()

    def norm(self, f1, f2):
        return self.complex_space.norm(self.embed(f1, f2))


@dataclass(frozen=True, eq=False)
class RealForm:
    """X = Phi^-1 (E_C) for the real span E of v and w"""
    real_space: spaces.SupSpace
    phases: np.ndarray
    flats: list
    defects: dict = field(default_factory=dict)


def complexify_space(E, samples=8, seed=0):
    if E.is_complex:
        raise ContractViolation('Complexification expects a real space', label=E.label)
    EC = ComplexificationMap(E, spaces.SupSpace(numerics.COMPLEX, E.basis.astype(complex),
                                                label='%s_C' % (E.label or 'E')))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        f1, f2 = rng.standard_normal((2, E.dim))
        a, b = rng.standard_normal(2)
        lhs = EC.embed(a * f1 - b * f2, a * f2 + b * f1)
        rhs = (a + 1j * b) * EC.embed(f1, f2)
        scale = max(1.0, float(np.max(np.abs(rhs))))
        if np.max(np.abs(lhs - rhs)) > ACTION_TOL * scale:
            raise ContractViolation('Complex scalar action is inconsistent')
        if abs(EC.complex_space.norm(lhs) - abs(a + 1j * b) * EC.norm(f1, f2)) > ACTION_TOL * scale:
            raise ContractViolation('Complexified norm is not complex homogeneous')
    return EC


def complexify_operator(S, EC=None):
    """S_C on E_C: the same matrix, into complex l_2^k with |h1 + i h2| = (|h1|^2 + |h2|^2)^1/2"""
    if S.source.is_complex or np.iscomplexobj(S.matrix):
        raise ContractViolation('Complexification expects a real operator')
    EC = EC or complexify_space(S.source)
    return operators.OperatorRep(EC.complex_space, S.matrix.astype(complex))


def complexified_intervals(S, gap=summing.DEFAULT_GAP, restarts=summing.DEFAULT_RESTARTS, seed=0):
    """
    Certified intervals for pi_2(S_C), pi_2(S) and ||S_C||. The norm interval
    is closed from above by pi_2(S_C) as well, since ||T|| <= pi_2(T).
    """
    SC = complexify_operator(S)
    real = summing.pi2_certify(S, gap=gap, restarts=restarts, seed=seed)
    cplx = summing.pi2_certify(SC, gap=gap, restarts=restarts, seed=seed)
    norm = operators.op_norm(SC, gap=gap, seed=seed, strict=False)
    intervals = dict(pi2_complex=[cplx.lower, cplx.upper], pi2_real=[real.lower, real.upper],
                     norm_complex=[norm.lower, min(norm.upper, cplx.upper)])
    lowers = [lo for lo, _ in intervals.values()]
    uppers = [up for _, up in intervals.values()]
    intervals['overlap'] = max(lowers) <= min(uppers) + OVERLAP_TOL
    return intervals


def is_complexification(T, sample=None):
    """
    Whether T is the complexification of its restriction to the real span of
    the sample columns: Im <Te, Te'> vanishes on all sample pairs. Returns
    (verdict, defect); on success the norms at e + ie' and e - ie' must agree too.
    """
    n = T.source.dim
    E0 = np.eye(n) if sample is None else np.asarray(sample)
    if np.iscomplexobj(E0):
        if np.max(np.abs(E0.imag)) > 0:
            raise PreconditionFailed('Sample vectors must have real coefficients')
        E0 = E0.real
    if E0.ndim != 2 or E0.shape[0] != n or np.linalg.matrix_rank(E0) < n:
        raise PreconditionFailed('Sample does not span the real part', dim=n)
    images = T.matrix @ E0
    gram = numerics.adjoint(images) @ images
    defect = float(np.max(np.abs(gram.imag))) if gram.size else 0.0
    if defect > RECOGNITION_TOL:
        return False, defect
    s = E0.shape[1]
    for i in range(s):
        for j in range(s):
            plus = np.linalg.norm(images[:, i] + 1j * images[:, j])
            minus = np.linalg.norm(images[:, i] - 1j * images[:, j])
            if abs(plus - minus) > RECOGNITION_TOL:
                return False, max(defect, float(abs(plus - minus)))
    return True, defect


def realification_error(phases=DEFAULT_PHASES):
    """Relative norm error of the phase-sampled realification"""
    return float(1 - np.cos(np.pi / (2 * phases)))


def realify(space, phases=DEFAULT_PHASES):
    """
    X as a real space of dimension 2n: coefficients (a, b) stand for a + ib
    and the modulus at each ambient point is sampled on the half circle,
    max_j |Re(e^-i theta_j z)|, which is exact on real values and within
    realification_error(phases) otherwise.
    """
    if not space.is_complex:
        raise ContractViolation('Realification expects a complex space', label=space.label)
    theta = np.pi * np.arange(phases) / phases
    rows = []
    for b in space.basis:
        w = np.exp(-1j * theta)[:, None] * b[None, :]
        rows.append(np.hstack([w.real, -w.imag]))
    return spaces.SupSpace(numerics.REAL, np.vstack(rows), label='realify(%s)' % space.label)


def annihilator_normal_form(space):
    """
    Coordinates that bring an n-dim subspace of l_inf^(n+1) to
    span{e_i + a_i e_(n+1)} with |a_i| <= 1. Returns (order, a, C) with
    basis[order] @ C the normal form basis.
    """
    B = space.basis
    N, n = B.shape
    if N != n + 1:
        raise PreconditionFailed('Normal form needs codimension one', ambient=N, dim=n)
    _, _, Vh = np.linalg.svd(B.T)
    ann = np.conj(Vh[-1])
    last = int(np.argmax(np.abs(ann)))
    order = [k for k in range(N) if k != last] + [last]
    C = np.linalg.inv(B[order[:n], :])
    a = -ann[order[:n]] / ann[last]
    return order, a, C


def normal_form_flats(a, b):
    """
    Flat vectors x - psi y of span{(1,0,a), (0,1,b)}: |psi| = 1 and
    |a - psi b| = 1, the intersection of the unit circle with the circle
    of radius 1/|b| around a/b. Returns the values of psi.
    """
    a, b = complex(a), complex(b)
    if abs(b) < 1e-12:
        return [1.0 + 0j, -1.0 + 0j] if abs(abs(a) - 1) <= FLAT_TOL else []
    r = abs(a) * abs(b)
    c = (abs(a) ** 2 + abs(b) ** 2 - 1) / 2
    if r < 1e-12 or abs(c) > r * (1 + 1e-12):
        return []
    phi = np.angle(a * np.conj(b))
    delta = float(np.arccos(np.clip(c / r, -1.0, 1.0)))
    roots = [np.exp(1j * (phi - delta)), np.exp(1j * (phi + delta))]
    if delta < 1e-9:
        roots = roots[:1]
    return [complex(z) for z in roots]


def phase_normalize(y, z, tol=1e-9):
    """
    Unimodular alpha_j with alpha_j y_j = conj(alpha_j z_j) and
    Re(alpha_j y_j) >= 0. Returns (alpha, defect).
    """
    y, z = np.asarray(y, dtype=complex), np.asarray(z, dtype=complex)
    if np.max(np.abs(np.abs(y) - np.abs(z))) > tol:
        raise PreconditionFailed('Vectors must have equal moduli coordinatewise')
    alpha = np.ones(y.size, dtype=complex)
    for j, (yj, zj) in enumerate(zip(y, z)):
        if abs(yj) <= tol:
            continue
        root = np.sqrt(np.conj(zj) / yj / abs(np.conj(zj) / yj))
        if np.real(root * yj) < -1e-15:
            root = -root
        alpha[j] = root
    defect = float(np.max(np.abs(alpha * y - np.conj(alpha * z))))
    return alpha, defect


def real_pair(y, z, alpha):
    """v = (Phi y + Phi z) / 2 and w = (Phi y - Phi z) / 2i, both real up to the phase defect"""
    Py, Pz = alpha * np.asarray(y), alpha * np.asarray(z)
    v = (Py + Pz) / 2
    w = (Py - Pz) / 2j
    residual = float(max(np.max(np.abs(v.imag)), np.max(np.abs(w.imag))))
    return v.real, w.real, residual


def real_form(space):
    """
    Exhibits a 2-dim subspace of complex l_inf^3 as Phi^-1 of the
    complexification of a real subspace of l_inf^3, through its two flat
    vectors. Each step reports its defect.
    """
    if not space.is_complex or space.dim != 2 or space.ambient != 3:
        raise PreconditionFailed('Real form needs a 2-dim subspace of complex l_inf^3',
                                 ambient=space.ambient, dim=space.dim)
    order, (a, b), C = annihilator_normal_form(space)
    psis = normal_form_flats(a, b)
    if len(psis) < 2:
        raise PreconditionFailed('Space is isometric to l_inf^2 and has no pair of flat vectors', a=abs(a), b=abs(b))
    inverse = np.argsort(order)
    flats = []
    for psi in psis:
        f = np.array([1.0, -psi, a - psi * b])[inverse]
        flats.append(f)
    deviation = max(float(np.max(np.abs(np.abs(f) - 1))) for f in flats)
    alpha, phase_defect = phase_normalize(flats[0], flats[1])
    v, w, residual = real_pair(flats[0], flats[1], alpha)
    E = spaces.SupSpace(numerics.REAL, np.column_stack([v, w]), label='real_form(%s)' % space.label)
    back = np.conj(alpha)[:, None] * np.column_stack([v + 1j * w, v - 1j * w])
    span_defect = float(np.linalg.svd(np.column_stack([space.basis, back]), compute_uv=False)[2])
    LOG.debug('Real form: flats %s, phase defect %.3g, span defect %.3g', psis, phase_defect, span_defect)
    return RealForm(real_space=E, phases=alpha, flats=flats,
                    defects=dict(flat=deviation, phase=phase_defect, real=residual, span=span_defect))
