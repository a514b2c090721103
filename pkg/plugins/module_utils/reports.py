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
Space, operator and report files, and the optimizer-free verifier.

Files are JSON. Complex scalars are written as [re, im] pairs; real
scalars as plain numbers. Every serialized certificate is a dict with a
``kind`` key, and verify() re-checks each one it finds using linear algebra
only (square functions, pencil eigenvalues, vertex enumeration).
"""

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field, fields, is_dataclass

import numpy as np
from scipy import linalg

from ansible_collections.numlab.summing.plugins.module_utils import numerics, operators, spaces
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, InputError, LabError


LOG = logging.getLogger(__name__)

VERSION = '1.0.0'
VERIFY_TOL = 1e-8
CONTACT_TOL = 1e-6
FLAT_TOL = 1e-9
NORM_TOL = operators.DEFAULT_GAP
REFUTATION_FACTOR = 10.0

STATUSES = ('holds-empirically', 'fails-certified', 'inconclusive')


# Encoding

def encode(value):
    """JSON-ready copy of value: arrays to lists, complex to [re, im], non-finite floats to None"""
    if isinstance(value, np.ndarray):
        return encode(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [encode(float(value.real)), encode(float(value.imag))]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if value is None or isinstance(value, str):
        return value
    if hasattr(value, 'to_dict'):
        return encode(value.to_dict())
    if is_dataclass(value):
        return encode({f.name: getattr(value, f.name) for f in fields(value)})
    raise ContractViolation('Value cannot be serialized', type=type(value).__name__)


def canonical_json(value):
    return json.dumps(encode(value), sort_keys=True, separators=(',', ':'))


def digest(value):
    return hashlib.sha256(canonical_json(value).encode('utf-8')).hexdigest()


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _scalar(v, cplx, source, path):
    if _is_number(v):
        return complex(v) if cplx else float(v)
    if cplx and isinstance(v, list) and len(v) == 2 and all(_is_number(x) for x in v):
        return complex(v[0], v[1])
    expected = 'a number or an [re, im] pair' if cplx else 'a number'
    raise InputError('Expected %s' % expected, source=source, position=path)


def decode_array(value, cplx, ndim, source=None, path='$'):
    """Nested lists of scalars to an array of the given rank"""
    if ndim == 0:
        return _scalar(value, cplx, source, path)
    if not isinstance(value, list):
        raise InputError('Expected a list', source=source, position=path)
    items = [decode_array(v, cplx, ndim - 1, source, '%s[%d]' % (path, i)) for i, v in enumerate(value)]
    if ndim > 1 and len({np.shape(x) for x in items}) > 1:
        raise InputError('Rows have different lengths', source=source, position=path)
    return np.array(items, dtype=complex if cplx else float)


def load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except json.JSONDecodeError as err:
        raise InputError(err.msg, source=path, position='line %d column %d' % (err.lineno, err.colno))
    except OSError as err:
        raise InputError(err.strerror or str(err), source=path)


def _require(obj, key, source, path):
    if not isinstance(obj, dict):
        raise InputError('Expected an object', source=source, position=path)
    if key not in obj:
        raise InputError('Missing key "%s"' % key, source=source, position=path)
    return obj[key]


# Spaces and operators

def space_from_dict(obj, source=None, path='$'):
    field_name = _require(obj, 'field', source, path)
    if field_name not in numerics.FIELDS:
        raise InputError('Field must be one of %s' % ', '.join(numerics.FIELDS), source=source,
                         position=path + '.field')
    cplx = field_name == numerics.COMPLEX
    columns = decode_array(_require(obj, 'basis', source, path), cplx, 2, source, path + '.basis')
    if columns.shape[0] == 0:
        raise InputError('Basis needs at least one column', source=source, position=path + '.basis')
    ambient = obj.get('ambient', columns.shape[1])
    if not isinstance(ambient, int) or ambient != columns.shape[1]:
        raise InputError('Columns must have length ambient=%s' % ambient, source=source,
                         position=path + '.basis[0]')
    return spaces.SupSpace(field_name, columns.T, label=obj.get('label', '') or os.path.basename(source or ''))


def space_to_dict(space):
    return dict(field=space.field, ambient=space.ambient, basis=space.basis.T, label=space.label)


def load_space(path):
    return space_from_dict(load_json(path), source=path)


def operator_from_dict(obj, source=None, path='$'):
    ref = _require(obj, 'space', source, path)
    if isinstance(ref, str):
        base = os.path.dirname(source) if source else ''
        space = load_space(os.path.join(base, ref))
    else:
        space = space_from_dict(ref, source, path + '.space')
    matrix = decode_array(_require(obj, 'matrix', source, path), space.is_complex, 2, source, path + '.matrix')
    if matrix.ndim != 2 or matrix.shape[1] != space.dim:
        raise InputError('Matrix rows must have length %d' % space.dim, source=source, position=path + '.matrix')
    k = obj.get('target_dim', matrix.shape[0])
    if k != matrix.shape[0]:
        raise InputError('Matrix has %d rows, target_dim is %s' % (matrix.shape[0], k), source=source,
                         position=path + '.target_dim')
    return operators.OperatorRep(space, matrix)


def operator_to_dict(T):
    return dict(space=space_to_dict(T.source), target_dim=T.target_dim, matrix=T.matrix)


def load_operator(path):
    return operator_from_dict(load_json(path), source=path)


def ellipsoid_to_dict(E):
    return dict(Q=E.Q)


# Certificate entries

def pi2_entry(T, cert):
    return dict(kind='pi2', operator=operator_to_dict(T), lower=cert.lower, upper=cert.upper, gap=cert.gap,
                converged=cert.converged, witness=cert.witness.vectors, measure=cert.pietsch.mu.weights,
                pietsch_value=cert.pietsch.value, slack=cert.pietsch.slack)


def norm_entry(T, cert):
    return dict(kind='opnorm', operator=operator_to_dict(T), lower=cert.lower, upper=cert.upper, gap=cert.gap,
                method=cert.method, witness=cert.witness)


def verdict_entry(space, verdict):
    return dict(kind='verdict', space=space_to_dict(space), status=verdict.status, margin=verdict.margin,
                witnesses=verdict.witnesses, budget=verdict.budget)


def john_entry(space, E, decomposition):
    return dict(kind='john', space=space_to_dict(space), Q=E.Q, contact_points=decomposition.contact_points,
                weights=decomposition.weights, residual=decomposition.residual, total=decomposition.total)


def flats_entry(space, flats):
    return dict(kind='flats', space=space_to_dict(space),
                flats=[dict(coefficients=f.coefficients, deviation=f.deviation) for f in flats])


def hexagon_entry(space, section):
    return dict(kind='hexagon', space=space_to_dict(space), basis=section.basis, outside=section.outside,
                inside=section.inside, signs=section.signs, section_Q=section.section_form,
                contact_count=section.contact_count, pairing_deviation=section.pairing_deviation)


def distance_entry(space, bounds):
    return dict(kind='distance', space=space_to_dict(space), upper=bounds.upper, lower=bounds.lower,
                upper_witness=bounds.upper_witness, lower_witnesses=bounds.lower_witnesses)


def lemma43_entry(lambdas, value, point, on_torus):
    return dict(kind='lemma43', lambdas=list(lambdas), value=value, argmax=list(point), on_torus=on_torus)


@dataclass
class Report:
    command: list
    inputs_digest: str
    results: dict
    seeds: dict = field(default_factory=dict)
    budgets: dict = field(default_factory=dict)
    status: str = 'ok'
    version: str = VERSION
    wall_time: float = 0.0

    def to_dict(self):
        return dict(command=self.command, inputs_digest=self.inputs_digest, results=self.results, seeds=self.seeds,
                    budgets=self.budgets, status=self.status, version=self.version, wall_time=self.wall_time)

    def dumps(self):
        return json.dumps(encode(self.to_dict()), indent=2, sort_keys=True)


# Verification

def _square_function(space, C):
    return np.sum(np.abs(space.basis @ C) ** 2, axis=1)


def _norm_upper(T, claim):
    """A re-derived upper bound for ||T||, refined only as far as claim needs"""
    upper, _ = operators.certified_upper(T, target=claim + NORM_TOL / 2 * max(1.0, abs(claim)))
    return upper


def _close_below(value, claim, tol=VERIFY_TOL):
    """value >= claim up to tol, relative above one"""
    return value >= claim - tol * max(1.0, abs(claim))


def _check_witness_system(T, C, claim, path):
    if C.ndim == 1:
        C = C.reshape(-1, 1)
    square = float(np.max(_square_function(T.source, C)))
    if square > 1 + VERIFY_TOL:
        return ['%s: witness square function %.12g exceeds 1' % (path, square)]
    value = float(np.linalg.norm(T.matrix @ C))
    if not _close_below(value, claim):
        return ['%s: witness value %.12g below the claimed lower bound %.12g' % (path, value, claim)]
    return []


def _check_pi2(entry, path):
    T = operator_from_dict(entry['operator'], path=path + '.operator')
    cplx = T.source.is_complex
    C = decode_array(entry['witness'], cplx, 2, path=path + '.witness')
    problems = _check_witness_system(T, C, entry['lower'], path)
    weights = decode_array(entry['measure'], False, 1, path=path + '.measure')
    try:
        mu = spaces.MeasureWeights(weights)
    except ContractViolation as err:
        return problems + ['%s: measure %s' % (path, err.message)]
    value2 = numerics.pencil_max_eig(T.gram, spaces.l2_gram(T.source, mu))
    if entry['upper'] is None or np.sqrt(value2) > entry['upper'] + VERIFY_TOL * max(1.0, entry['upper']):
        problems.append('%s: Pietsch measure gives %.12g above the claimed upper bound' % (path, np.sqrt(value2)))
    if entry['lower'] > entry['upper'] + VERIFY_TOL:
        problems.append('%s: lower bound exceeds upper bound' % path)
    return problems


def _check_norm_bounds(T, w, lower, upper, path):
    """Witness w reaches lower, and nothing in the unit ball goes above upper"""
    problems = []
    reached = float(np.linalg.norm(T.matrix @ w))
    if T.source.norm(w) > 1 + VERIFY_TOL or not _close_below(reached, lower):
        problems.append('%s: norm witness does not reach the claimed lower bound' % path)
    if upper is None or lower > upper + VERIFY_TOL * max(1.0, abs(lower)):
        return problems + ['%s: norm lower bound exceeds the upper bound' % path]
    certified = _norm_upper(T, upper)
    if certified > upper + NORM_TOL * max(1.0, upper):
        problems.append('%s: certified norm bound %.12g above the claimed upper bound %.12g'
                        % (path, certified, upper))
    return problems


def _check_opnorm(entry, path):
    T = operator_from_dict(entry['operator'], path=path + '.operator')
    w = decode_array(entry['witness'], T.source.is_complex, 1, path=path + '.witness')
    return _check_norm_bounds(T, w, entry['lower'], entry['upper'], path)


def _check_verdict(entry, path):
    if entry.get('status') not in STATUSES:
        return ['%s: unknown status %r' % (path, entry.get('status'))]
    if entry['status'] != STATUSES[1]:
        return []
    space = space_from_dict(entry['space'], path=path + '.space')
    w = entry['witnesses']
    matrix = decode_array(w['operator'], space.is_complex, 2, path=path + '.witnesses.operator')
    T = operators.OperatorRep(space, matrix)
    C = decode_array(w['witness'], space.is_complex, 2, path=path + '.witnesses.witness')
    problems = _check_witness_system(T, C, w['pi2_lower'], path + '.witnesses')
    nw = decode_array(w['norm_witness'], space.is_complex, 1, path=path + '.witnesses.norm_witness')
    problems.extend(_check_norm_bounds(T, nw, w['norm_lower'], w['norm_upper'], path + '.witnesses'))
    gap = w['norm_upper'] - w['norm_lower']
    ratio = w['pi2_lower'] / w['norm_upper']
    if ratio < 1 + REFUTATION_FACTOR * gap or ratio <= 1:
        problems.append('%s: ratio %.12g below the refutation threshold' % (path, ratio))
    return problems


def _check_john(entry, path):
    space = space_from_dict(entry['space'], path=path + '.space')
    cplx = space.is_complex
    Q = decode_array(entry['Q'], cplx, 2, path=path + '.Q')
    P = decode_array(entry['contact_points'], cplx, 2, path=path + '.contact_points')
    weights = decode_array(entry['weights'], False, 1, path=path + '.weights')
    problems = []
    forms = np.real(np.sum(np.conj(P) * (P @ Q.T), axis=1))
    if np.max(np.abs(forms - 1)) > CONTACT_TOL:
        problems.append('%s: contact point off the ellipsoid boundary' % path)
    if np.max(np.abs(space.norm(P.T) - 1)) > CONTACT_TOL:
        problems.append('%s: contact point off the unit sphere' % path)
    if np.any(weights < 0):
        problems.append('%s: negative weight' % path)
    w, U = linalg.eigh(Q)
    Y = P @ ((U * np.sqrt(np.maximum(w, 0))) @ numerics.adjoint(U)).T
    resolution = np.einsum('k,ki,kj->ij', weights, Y, np.conj(Y))
    if np.max(np.abs(resolution - np.eye(space.dim))) > CONTACT_TOL:
        problems.append('%s: weights do not resolve the identity' % path)
    if abs(float(np.sum(weights)) - space.dim) > CONTACT_TOL:
        problems.append('%s: weights sum to %.12g, not %d' % (path, float(np.sum(weights)), space.dim))
    return problems


def _check_flats(entry, path):
    space = space_from_dict(entry['space'], path=path + '.space')
    problems = []
    for i, flat in enumerate(entry['flats']):
        c = decode_array(flat['coefficients'], space.is_complex, 1, path='%s.flats[%d]' % (path, i))
        deviation = float(np.max(np.abs(np.abs(space.basis @ c) - 1)))
        if deviation > FLAT_TOL:
            problems.append('%s.flats[%d]: deviation %.3g is not flat' % (path, i, deviation))
    return problems


def _check_hexagon(entry, path):
    space = space_from_dict(entry['space'], path=path + '.space')
    basis = decode_array(entry['basis'], False, 2, path=path + '.basis')
    Q = decode_array(entry['section_Q'], False, 2, path=path + '.section_Q')
    section = spaces.SupSpace(numerics.REAL, space.basis @ basis)
    h = np.sqrt(np.einsum('ki,ij,kj->k', section.basis, linalg.inv(Q), section.basis))
    problems = []
    if np.max(h) > 1 + CONTACT_TOL:
        problems.append('%s: section ellipse leaves the unit ball' % path)
    count = 2 * int(np.sum(np.abs(h - 1) <= CONTACT_TOL))
    if count < min(entry['contact_count'], 6):
        problems.append('%s: %d contact points, %d claimed' % (path, count, entry['contact_count']))
    return problems


def _pietsch_bound(T, weights, path):
    """sqrt of the top pencil eigenvalue for a stored measure, inf when unusable"""
    try:
        mu = spaces.MeasureWeights(decode_array(weights, False, 1, path=path))
    except ContractViolation:
        return float('inf')
    if mu.weights.shape != (T.source.ambient,):
        return float('inf')
    return float(np.sqrt(numerics.pencil_max_eig(T.gram, spaces.l2_gram(T.source, mu))))


def _trace_duality_lower(space, witness, path):
    """n / (pi_2(a) pi_2((a^-1)*)) with both factors recomputed from the stored measures"""
    a = decode_array(witness['operator'], space.is_complex, 2, path=path + '.operator')
    if a.shape != (space.dim, space.dim):
        return 0.0
    dual = spaces.dual_embed(space, int(witness['resolution']), max_error=None)
    b_star = operators.OperatorRep(dual, linalg.inv(a).T)
    pa = _pietsch_bound(operators.OperatorRep(space, a), witness['measure_operator'], path + '.measure_operator')
    pb = _pietsch_bound(b_star, witness['measure_inverse_adjoint'], path + '.measure_inverse_adjoint')
    if not np.isfinite(pa * pb) or pa * pb <= 0:
        return 0.0
    return space.dim / (pa * pb)


def _check_distance(entry, path):
    problems = []
    if entry['lower'] > entry['upper'] + VERIFY_TOL:
        problems.append('%s: lower bound exceeds upper bound' % path)
    space = space_from_dict(entry['space'], path=path + '.space')
    u = decode_array(entry['upper_witness'], space.is_complex, 2, path=path + '.upper_witness')
    norm_inv = operators.HilbertDomainRep(space, linalg.inv(u)).norm()
    claim = entry['upper'] / norm_inv
    norm_u = _norm_upper(operators.OperatorRep(space, u), claim)
    if norm_u * norm_inv > entry['upper'] + NORM_TOL * max(1.0, entry['upper']):
        problems.append('%s: ||u|| ||u^-1|| = %.12g above the claimed upper bound' % (path, norm_u * norm_inv))
    best = 0.0
    for i, witness in enumerate(entry['lower_witnesses']):
        best = max(best, _trace_duality_lower(space, witness, '%s.lower_witnesses[%d]' % (path, i)))
    if entry['lower'] > best + VERIFY_TOL * max(1.0, best):
        problems.append('%s: lower bound %.12g not supported by its witnesses (%.12g)' % (path, entry['lower'], best))
    return problems


def _check_lemma43(entry, path):
    l1, l2, l3 = (_scalar(v, True, None, path + '.lambdas') for v in entry['lambdas'])
    z1, z2 = (_scalar(v, True, None, path + '.argmax') for v in entry['argmax'])
    value = abs(1 + l1 * z1 + l2 * z2 + l3 * z1 * np.conj(z2))
    value += abs(l3) * np.sqrt(max(1 - abs(z1) ** 2, 0)) * np.sqrt(max(1 - abs(z2) ** 2, 0))
    problems = []
    if abs(value - entry['value']) > 1e-9 * max(1.0, value):
        problems.append('%s: value at argmax is %.12g' % (path, value))
    if entry['on_torus'] and max(abs(abs(z1) - 1), abs(abs(z2) - 1)) > 1e-9:
        problems.append('%s: argmax is not on the torus' % path)
    return problems


CHECKS = dict(pi2=_check_pi2, opnorm=_check_opnorm, verdict=_check_verdict, john=_check_john,
              flats=_check_flats, hexagon=_check_hexagon, distance=_check_distance, lemma43=_check_lemma43)


def _walk(node, path):
    if isinstance(node, dict):
        check = CHECKS.get(node.get('kind'))
        if check is not None:
            try:
                yield from check(node, path)
            except (KeyError, TypeError) as err:
                yield '%s: malformed %s entry (%s)' % (path, node['kind'], err)
            except LabError as err:
                yield '%s: %s' % (path, err.message)
            return
        for key in sorted(node):
            yield from _walk(node[key], '%s.%s' % (path, key))
    elif isinstance(node, list):
        for i, item in enumerate(node):
            yield from _walk(item, '%s[%d]' % (path, i))


def verify(report):
    """Violations found in every certificate of a report dict, in document order; empty when all hold"""
    problems = list(_walk(report.get('results', report), '$.results' if 'results' in report else '$'))
    LOG.info('Verified report: %d violations', len(problems))
    return problems


def count_certificates(report):
    def count(node):
        if isinstance(node, dict):
            return 1 if node.get('kind') in CHECKS else sum(count(v) for v in node.values())
        if isinstance(node, list):
            return sum(count(v) for v in node)
        return 0
    return count(report)


# Pictures

def dump_svg(path, space, ellipsoids=(), title=None):
    """Unit ball of a 2-dim real space and the given ellipses, in coefficient coordinates"""
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    if space.is_complex or space.dim != 2:
        raise ContractViolation('Pictures need a 2-dim real space', dim=space.dim, field=space.field)
    pts = spaces.extreme_points(space).points
    order = np.argsort(np.arctan2(pts[:, 1], pts[:, 0]))
    ring = np.vstack([pts[order], pts[order][:1]])
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(ring[:, 0], ring[:, 1], color='black', linewidth=1.2, label='Ball(X)')
    t = np.linspace(0, 2 * np.pi, 361)
    for i, E in enumerate(ellipsoids):
        curve = E.inverse_root() @ np.vstack([np.cos(t), np.sin(t)])
        ax.plot(curve[0], curve[1], linewidth=1.0, label='E%d' % (i + 1))
    ax.set_aspect('equal')
    ax.legend(loc='upper right')
    if title:
        ax.set_title(title)
    fig.savefig(path, format='svg')
    plt.close(fig)
    LOG.debug('Wrote %s', path)
