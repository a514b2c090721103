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

import numpy as np
import pytest

from ansible_collections.numlab.summing.plugins.module_utils import complexify, numerics, operators, spaces
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, PreconditionFailed


def test_complexify_space_keeps_the_ambient_points():
    EC = complexify.complexify_space(spaces.example_plane())
    assert EC.complex_space.is_complex
    np.testing.assert_allclose(EC.complex_space.basis, spaces.example_plane().basis)
    f1, f2 = np.array([0.3, -0.1]), np.array([0.2, 0.5])
    assert EC.norm(f1, f2) == pytest.approx(EC.complex_space.norm(f1 + 1j * f2))
    np.testing.assert_allclose(EC.split(EC.embed(f1, f2)), [f1, f2])


def test_complexify_rejects_complex_input():
    with pytest.raises(ContractViolation):
        complexify.complexify_space(spaces.linf(2, numerics.COMPLEX))
    with pytest.raises(ContractViolation):
        complexify.complexify_operator(operators.OperatorRep(spaces.linf(2, numerics.COMPLEX), np.eye(2)))


def test_complexified_intervals_overlap():
    S = operators.OperatorRep(spaces.linf(2), np.eye(2))
    intervals = complexify.complexified_intervals(S, restarts=4)
    assert intervals['overlap']
    assert intervals['pi2_real'][0] == pytest.approx(np.sqrt(2), abs=1e-6)
    assert intervals['pi2_complex'][1] == pytest.approx(np.sqrt(2), abs=1e-6)


def test_recognizes_complexifications():
    X = spaces.linf(2, numerics.COMPLEX)
    verdict, defect = complexify.is_complexification(operators.OperatorRep(X, [[1.0, 2.0], [0.5, -1.0]]))
    assert verdict and defect == 0.0
    verdict, defect = complexify.is_complexification(operators.OperatorRep(X, [[1.0, 1j]]))
    assert not verdict
    assert defect == pytest.approx(1.0)


def test_recognition_needs_a_real_spanning_sample():
    T = operators.OperatorRep(spaces.linf(2, numerics.COMPLEX), np.eye(2))
    with pytest.raises(PreconditionFailed):
        complexify.is_complexification(T, sample=np.eye(2) * 1j)
    with pytest.raises(PreconditionFailed):
        complexify.is_complexification(T, sample=[[1.0], [0.0]])


def test_realify_is_close_to_the_modulus():
    X = spaces.linf(2, numerics.COMPLEX)
    R = complexify.realify(X, phases=16)
    z = np.array([0.6 + 0.8j, 0.3 - 0.1j])
    value = R.norm(np.concatenate([z.real, z.imag]))
    assert value <= X.norm(z) + 1e-12
    assert value >= X.norm(z) * (1 - complexify.realification_error(16)) - 1e-12
    assert R.norm(np.array([0.5, -0.25, 0.0, 0.0])) == pytest.approx(0.5)


def test_normal_form_flats_of_the_example_plane():
    psis = complexify.normal_form_flats(1 / np.sqrt(2), 1 / np.sqrt(2))
    assert sorted(np.imag(psis)) == pytest.approx([-1.0, 1.0])
    assert np.real(psis) == pytest.approx([0.0, 0.0], abs=1e-12)


@pytest.mark.parametrize('a,b,count', [(1.0, 0.0, 2), (0.5, 0.0, 0), (0.1, 0.1, 0), (1.0, 1.0, 2)])
def test_normal_form_flat_counts(a, b, count):
    psis = complexify.normal_form_flats(a, b)
    assert len(psis) == count
    for psi in psis:
        assert abs(psi) == pytest.approx(1.0)
        assert abs(a - psi * b) == pytest.approx(1.0)


def test_annihilator_normal_form():
    space = spaces.example_plane(numerics.COMPLEX)
    order, a, C = complexify.annihilator_normal_form(space)
    np.testing.assert_allclose(space.basis[order] @ C, np.vstack([np.eye(2), a.reshape(1, 2)]), atol=1e-10)
    np.testing.assert_allclose(np.abs(a), [1 / np.sqrt(2)] * 2, atol=1e-10)
    with pytest.raises(PreconditionFailed):
        complexify.annihilator_normal_form(spaces.linf(3, numerics.COMPLEX))


def test_phase_normalize_needs_equal_moduli():
    with pytest.raises(PreconditionFailed):
        complexify.phase_normalize([1.0, 1.0], [1.0, 0.5])
    alpha, defect = complexify.phase_normalize([1.0, 1j], [1.0, -1j])
    assert defect <= 1e-12
    np.testing.assert_allclose(np.abs(alpha), 1.0)


def test_real_form_of_the_example_plane():
    form = complexify.real_form(spaces.example_plane(numerics.COMPLEX))
    assert len(form.flats) == 2
    for name, defect in form.defects.items():
        assert defect <= 1e-9, name
    assert not form.real_space.is_complex
    for f in form.flats:
        np.testing.assert_allclose(np.abs(f), 1.0, atol=1e-12)


def test_real_form_refuses_linf2():
    with pytest.raises(PreconditionFailed):
        complexify.real_form(spaces.normal_form([0.5, 0.0], numerics.COMPLEX))
