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

import copy
import json

import numpy as np
import pytest

from ansible_collections.numlab.summing.plugins.module_utils import (certify, ellipsoids, numerics, operators, reports,
                                                                     spaces, summing)
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, InputError


@pytest.fixture
def example_identity():
    return operators.l2_identity_operator(spaces.example_plane(), spaces.MeasureWeights.uniform(3))


def encoded(entry):
    return json.loads(json.dumps(reports.encode(entry)))


def test_encode():
    assert reports.encode(np.array([1 + 2j, 3])) == [[1.0, 2.0], [3.0, 0.0]]
    assert reports.encode(dict(a=float('inf'), b=np.int64(3), c=np.bool_(True))) == dict(a=None, b=3, c=True)
    assert reports.encode(ellipsoids.HomothetyReport([1.0], 1.0, 1.0, 1.0, True, 0.0, False))['volume_ok'] is True
    with pytest.raises(ContractViolation):
        reports.encode(object())


def test_digest_ignores_key_order():
    assert reports.digest(dict(a=1, b=[1.0, 2.0])) == reports.digest(dict(b=[1.0, 2.0], a=1))
    assert reports.digest(dict(a=1)) != reports.digest(dict(a=2))


def test_load_json_reports_the_position(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"field": "real",\n "basis": [1, }')
    with pytest.raises(InputError) as err:
        reports.load_json(str(path))
    assert err.value.position.startswith('line 2 column')
    assert str(path) in str(err.value)


def test_load_json_missing_file(tmp_path):
    with pytest.raises(InputError):
        reports.load_json(str(tmp_path / 'absent.json'))


def test_space_files_hold_columns():
    obj = dict(field='real', ambient=3, basis=[[1, 0, 0.5], [0, 1, 0.5]], label='plane')
    space = reports.space_from_dict(obj)
    np.testing.assert_allclose(space.basis, [[1, 0], [0, 1], [0.5, 0.5]])
    assert space.label == 'plane'
    again = reports.space_from_dict(encoded(reports.space_to_dict(space)))
    np.testing.assert_allclose(again.basis, space.basis)


def test_complex_space_file():
    space = reports.space_from_dict(dict(field='complex', basis=[[1, 0, [0, 1]], [0, 1, 0]]))
    assert space.is_complex
    assert space.basis[2, 0] == 1j


@pytest.mark.parametrize('obj,position', [
    (dict(basis=[[1, 0]]), '$'),
    (dict(field='quaternion', basis=[[1, 0]]), '$.field'),
    (dict(field='real', basis=[[1, 0], [0]]), '$.basis'),
    (dict(field='real', basis=[[1, 'x']]), '$.basis[0][1]'),
    (dict(field='real', basis=[[1, [0, 1]]]), '$.basis[0][1]'),
    (dict(field='real', ambient=3, basis=[[1, 0]]), '$.basis[0]'),
    (dict(field='real', basis=[]), '$.basis'),
])
def test_bad_space_files(obj, position):
    with pytest.raises(InputError) as err:
        reports.space_from_dict(obj, source='space.json')
    assert err.value.position == position


def test_operator_file_with_a_space_reference(tmp_path):
    (tmp_path / 'plane.json').write_text(json.dumps(dict(field='real', basis=[[1, 0, 0.5], [0, 1, 0.5]])))
    (tmp_path / 'op.json').write_text(json.dumps(dict(space='plane.json', matrix=[[1, 2]], target_dim=1)))
    T = reports.load_operator(str(tmp_path / 'op.json'))
    assert T.target_dim == 1
    assert T.source.ambient == 3


def test_operator_file_checks_the_shape():
    space = dict(field='real', basis=[[1, 0], [0, 1]])
    with pytest.raises(InputError) as err:
        reports.operator_from_dict(dict(space=space, matrix=[[1, 2, 3]]))
    assert err.value.position == '$.matrix'
    with pytest.raises(InputError) as err:
        reports.operator_from_dict(dict(space=space, matrix=[[1, 2]], target_dim=2))
    assert err.value.position == '$.target_dim'


def test_pi2_entry_verifies_and_tampering_is_caught(example_identity):
    cert = summing.pi2_certify(example_identity, restarts=2)
    entry = encoded(reports.pi2_entry(example_identity, cert))
    assert reports.verify(dict(results=dict(pi2=entry))) == []
    tampered = copy.deepcopy(entry)
    tampered['upper'] = cert.lower / 2
    problems = reports.verify(dict(results=dict(pi2=tampered)))
    assert any('Pietsch measure' in p for p in problems)
    assert problems[0].startswith('$.results.pi2')


def test_opnorm_entry_tampering(example_identity):
    cert = operators.op_norm(example_identity)
    entry = encoded(reports.norm_entry(example_identity, cert))
    assert reports.verify(entry) == []
    entry['upper'] = 0.8
    assert any('exceeds the upper bound' in p for p in reports.verify(entry))
    entry['lower'] = 0.7
    assert any('certified norm bound' in p for p in reports.verify(entry))


def test_refuting_verdict_entry(example_identity):
    verdict = certify.operator_verdict(example_identity, np.eye(2))
    assert verdict.refuted
    entry = encoded(reports.verdict_entry(example_identity.source, verdict))
    assert reports.verify(dict(results=[entry])) == []
    entry['witnesses']['pi2_lower'] = 2.0
    problems = reports.verify(dict(results=[entry]))
    assert problems and problems[0].startswith('$.results[0].witnesses')


def test_inconclusive_verdicts_need_no_witness():
    entry = dict(kind='verdict', status='inconclusive', margin=0.0, witnesses={})
    assert reports.verify(entry) == []
    entry['status'] = 'maybe'
    assert reports.verify(entry) == ["$: unknown status 'maybe'"]


def test_john_entry():
    space = spaces.linf(2)
    E = ellipsoids.mvee(space)
    entry = encoded(reports.john_entry(space, E, ellipsoids.contact_points(space, E)))
    assert reports.verify(entry) == []
    entry['weights'] = [2.0, 0.0, 0.0, 0.0]
    assert reports.verify(entry)


def test_flats_entry():
    space = spaces.example_plane(numerics.COMPLEX)
    entry = encoded(reports.flats_entry(space, certify.flat_vector_search(space)))
    assert len(entry['flats']) == 2
    assert reports.verify(entry) == []
    entry['flats'][0]['coefficients'] = [1.0, 0.0]
    assert reports.verify(entry)


def test_lemma43_entry():
    value, point, on_torus = certify.lemma43_max(1, 1, 0, grid=32, radial=8)
    entry = encoded(reports.lemma43_entry((1, 1, 0), value, point, on_torus))
    assert reports.verify(entry) == []
    entry['value'] = 2.5
    assert reports.verify(entry)


def test_malformed_entries_are_reported():
    problems = reports.verify(dict(results=dict(x=dict(kind='opnorm'))))
    assert problems == ["$.results.x: malformed opnorm entry ('operator')"]


def test_count_certificates():
    report = dict(results=dict(a=dict(kind='pi2'), b=[dict(kind='flats'), dict(kind='other')], c=1))
    assert reports.count_certificates(report) == 2


def test_report_dumps_sorted_json():
    report = reports.Report(command=['numlab-summing', 'pi2'], inputs_digest='x', results=dict(v=np.array([1.0])))
    decoded = json.loads(report.dumps())
    assert decoded['results'] == dict(v=[1.0])
    assert decoded['version'] == reports.VERSION
    assert list(decoded) == sorted(decoded)


def test_dump_svg(tmp_path):
    space = spaces.example_plane()
    path = tmp_path / 'ball.svg'
    reports.dump_svg(str(path), space, (ellipsoids.mvee(space),), title='plane')
    assert '<svg' in path.read_text()
    with pytest.raises(ContractViolation):
        reports.dump_svg(str(path), spaces.linf(3))


def test_complex_opnorm_entry_verifies():
    T = operators.OperatorRep(spaces.linf(2, numerics.COMPLEX), np.eye(2))
    entry = encoded(reports.norm_entry(T, operators.op_norm(T)))
    assert reports.verify(entry) == []


def test_forged_complex_norm_bound_is_caught():
    space = spaces.linf(2, numerics.COMPLEX)
    T = operators.OperatorRep(space, np.eye(2))
    entry = encoded(reports.verdict_entry(space, certify.operator_verdict(T, np.eye(2))))
    entry['status'] = reports.STATUSES[1]
    entry['witnesses']['norm_upper'] = entry['witnesses']['norm_lower'] = 0.5
    problems = reports.verify(entry)
    assert any('certified norm bound' in p for p in problems)


def test_verdict_norm_bounds_must_be_ordered(example_identity):
    entry = encoded(reports.verdict_entry(example_identity.source,
                                          certify.operator_verdict(example_identity, np.eye(2))))
    entry['witnesses']['norm_lower'] = entry['witnesses']['norm_upper'] + 0.1
    assert any('exceeds the upper bound' in p for p in reports.verify(entry))


def test_distance_entry_is_rechecked_from_its_measures():
    space = spaces.linf(2)
    entry = encoded(reports.distance_entry(space, ellipsoids.distance_bounds(space, restarts=2)))
    assert reports.verify(entry) == []
    forged = copy.deepcopy(entry)
    for witness in forged['lower_witnesses']:
        witness['pi2_operator'] = witness['pi2_inverse_adjoint'] = 0.1
    forged['lower'], forged['upper'] = 50.0, 100.0
    assert any('not supported by its witnesses' in p for p in reports.verify(forged))
    moved = copy.deepcopy(entry)
    for witness in moved['lower_witnesses']:
        witness['measure_operator'] = [1.0] + [0.0] * (len(witness['measure_operator']) - 1)
    assert any('not supported by its witnesses' in p for p in reports.verify(moved))


def test_distance_entry_upper_bound_is_rechecked():
    space = spaces.linf(2, numerics.COMPLEX)
    entry = encoded(reports.distance_entry(space, ellipsoids.distance_bounds(space, restarts=2)))
    assert reports.verify(entry) == []
    entry['upper'] = entry['lower'] = 1.2
    assert any('above the claimed upper bound' in p for p in reports.verify(entry))
