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

import dataclasses

import numpy as np
import pytest

from ansible_collections.numlab.summing.plugins.module_utils import certify, numerics, operators, spaces
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, PreconditionFailed


R = 1 / np.sqrt(2)


def unit(degrees):
    t = np.radians(degrees)
    return np.array([np.cos(t), np.sin(t)])


def test_real_example_plane_fails_the_property():
    verdict = certify.check_2sp(spaces.example_plane(), k_max=2, restarts=2, subsets=1)
    assert verdict.refuted
    assert verdict.status == certify.FAILS
    assert verdict.margin >= 0.17
    assert verdict.witnesses['k'] == 2
    assert verdict.witnesses['pi2_lower'] / verdict.witnesses['norm_upper'] == pytest.approx(verdict.margin + 1)


def test_check_2sp_bounds_k():
    with pytest.raises(ContractViolation):
        certify.check_2sp(spaces.example_plane(), k_max=3)
    with pytest.raises(ContractViolation):
        certify.check_2sp(spaces.example_plane(), k_max=0)


def test_flat_vectors_of_the_complex_example_plane():
    flats = certify.flat_vector_search(spaces.example_plane(numerics.COMPLEX))
    assert len(flats) == 2
    for f in flats:
        assert f.flat
        np.testing.assert_allclose(f.moduli, 1.0, atol=1e-9)
    deviation, _ = certify.flat_deviation(spaces.example_plane(numerics.COMPLEX), starts=16)
    assert deviation <= 1e-6


def test_real_example_plane_has_no_flat_vector():
    deviation, c = certify.flat_deviation(spaces.example_plane(), starts=16)
    assert deviation == pytest.approx(1 - R, abs=1e-3)
    assert spaces.example_plane().norm(c) == pytest.approx(1.0)
    assert certify.flat_vector_search(spaces.example_plane(), starts=16) == []


def test_complexify_rep_removes_the_phase():
    c = np.array([0.0, 1j, 1.0])
    np.testing.assert_allclose(certify.complexify_rep(np.exp(0.7j) * c), [0.0, 1.0, -1j])


def test_criterion_a_refutes_the_real_example_plane():
    result = certify.criterion_27a(spaces.example_plane(), subsets=1, starts=16)
    assert result.refuted
    assert result.status == certify.REFUTED
    assert result.support == (0, 1, 2)
    assert result.margin == pytest.approx(1 - R, abs=1e-3)


def test_criterion_a_is_silent_on_the_complex_example_plane():
    result = certify.criterion_27a(spaces.example_plane(numerics.COMPLEX), subsets=1, starts=16)
    assert not result.refuted
    assert result.margin <= 1e-6


def test_criterion_a_needs_a_plane():
    with pytest.raises(PreconditionFailed):
        certify.criterion_27a(spaces.linf(3))


def test_criterion_b_refutes_the_real_example_plane():
    result = certify.criterion_27b(spaces.example_plane(), subsets=1, starts=16)
    assert result.refuted
    assert result.support == (0, 1, 2)


def test_criterion_b_on_a_line():
    result = certify.criterion_27b(spaces.SupSpace(numerics.REAL, [[1.0], [0.5]]))
    assert not result.refuted
    assert result.status == certify.NOT_REFUTED


@pytest.mark.parametrize('l1,l2,l3,expected', [
    (0, 0, 0, 1.0),
    (1, 1, 0, 3.0),
    (0, 0, 1, 2.0),
    (0.5, 0.5j, -0.5, None),
])
def test_lemma43_maximum_on_the_torus(l1, l2, l3, expected):
    value, (z1, z2), on_torus = certify.lemma43_max(l1, l2, l3, grid=64, radial=16)
    if expected is not None:
        assert value == pytest.approx(expected, abs=1e-8)
    assert on_torus
    assert abs(z1) == pytest.approx(1.0)
    assert abs(z2) == pytest.approx(1.0)
    torus = abs(1 + l1 * z1 + l2 * z2 + l3 * z1 * np.conj(z2))
    assert torus == pytest.approx(value, abs=1e-8)


def test_prop45_tight_instance():
    c, d = [R, R, 0.0], [R, -R, 0.0]
    result = certify.prop45_check(c, d, R, R)
    assert result.confirmed
    assert result.conclusion == pytest.approx(1.0)
    assert result.hypothesis_margin >= -1e-9


def test_prop45_orthogonal_columns():
    assert certify.prop45_check([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], R, R).confirmed


def test_prop45_larger_diagonal_is_vacuous():
    result = certify.prop45_check([R, R, 0.0], [R, -R, 0.0], 1.01 * R, 1.01 * R)
    assert result.vacuous
    assert result.hypothesis_margin < 0


def test_prop45_rejects_long_columns():
    with pytest.raises(PreconditionFailed):
        certify.prop45_check([1.0, 0.0, 0.0], [0.5, 0.0, 0.0], 0.5, 0.5)


def test_prop44_instance_is_admissible():
    space = spaces.example_plane(numerics.COMPLEX)
    T = operators.OperatorRep(space, np.eye(2))
    c, d, alpha, beta = certify.prop44_instance(space, T, restarts=2)
    assert np.max(np.abs(c) ** 2 + np.abs(d) ** 2) <= 1 + 1e-9
    assert alpha >= beta >= 0


@pytest.mark.parametrize('angles', [(0, 60, 120), (0, 90, 45)])
def test_three_directions_force_pi2_above_one(angles):
    verdict = certify.prop31_refute(*[unit(t) for t in angles], restarts=4)
    assert verdict.refuted
    assert verdict.margin > 0
    assert verdict.witnesses['norm_upper'] == pytest.approx(1.0)


def test_prop31_preconditions():
    with pytest.raises(PreconditionFailed):
        certify.prop31_refute(unit(0), unit(180), unit(90))
    with pytest.raises(PreconditionFailed):
        certify.prop31_refute(2 * unit(0), unit(60), unit(120))


def test_norming_functionals_of_a_hexagon():
    # l_2^2 onto the hexagonal plane of l_inf^3 whose facets sit at 0, 60 and 120 degrees
    space = spaces.SupSpace(numerics.REAL, np.array([unit(0), unit(60), unit(120)]) * np.cos(np.pi / 6))
    u = operators.HilbertDomainRep(space, np.eye(2) / np.cos(np.pi / 6))
    points = np.column_stack([unit(0), unit(60), unit(120)])
    outcome = certify.cor32_functionals(u, points, restarts=4)
    assert outcome['verdict'].refuted
    assert outcome['functionals'].shape == (3, 2)


def test_norming_functionals_need_norm_attainment():
    u = operators.HilbertDomainRep(spaces.linf(2), np.eye(2) / 2)
    with pytest.raises(PreconditionFailed):
        certify.cor32_functionals(u, np.eye(2))


def test_operator_verdict_checks_the_witness():
    T = operators.OperatorRep(spaces.linf(2), np.eye(2))
    with pytest.raises(ContractViolation):
        certify.operator_verdict(T, np.eye(2) * 2)
    verdict = certify.operator_verdict(T, np.eye(2))
    assert verdict.status == certify.INCONCLUSIVE
    assert verdict.margin == pytest.approx(0.0)


def test_contact_pairing_of_the_cube():
    mw = certify.milman_wolfson(spaces.linf(3))
    assert mw['deviation'] <= 1e-6
    assert len(mw['outside']) == 4
    assert len(mw['inside']) == 3


def test_hexagon_preconditions():
    with pytest.raises(PreconditionFailed):
        certify.hexagon_section(spaces.linf(2))
    with pytest.raises(PreconditionFailed):
        certify.hexagon_section(spaces.linf(3, numerics.COMPLEX))


@pytest.mark.slow
@pytest.mark.parametrize('space', [spaces.linf(3), spaces.l1_signs(3)], ids=['linf3', 'l1_3'])
def test_hexagon_section(space):
    section = certify.hexagon_section(space, restarts=4)
    assert section.certified
    assert section.contact_count == 6
    assert section.dual_certificate['verdict'].refuted


def test_example23_complex_square_function():
    space, eye, info = certify.example23_complex()
    np.testing.assert_allclose(info['square_function'], 1.0)
    np.testing.assert_allclose(info['variant_square_function'], [2.0, 0.0, 1.0, 1.0])
    assert space.ambient == 4 and space.dim == 2


def test_normal_form_blocks_long_coefficient_lists():
    form = certify.normal_form_l4(spaces.normal_form([0.5, 0.5, 0.5, 0.5], numerics.COMPLEX))
    assert len(form.blocks) == 3
    assert sorted(i for block in form.blocks for i in block) == [0, 1, 2, 3]
    assert np.all(form.a <= 1 + 1e-12)
    assert np.sum(form.a) == pytest.approx(2.0)


def test_normal_form_keeps_three_coefficients():
    form = certify.normal_form_l4(spaces.normal_form([0.5, 0.5j, -0.5], numerics.COMPLEX))
    np.testing.assert_allclose(form.a, [0.5, 0.5, 0.5])
    assert form.blocks == [[0], [1], [2]]


def test_counterexample_needs_a_large_sum():
    with pytest.raises(PreconditionFailed):
        certify.counterexample_56([1.0, 0.0, 0.0])
    with pytest.raises(PreconditionFailed):
        certify.counterexample_56([1.5, 0.5, 0.5])


@pytest.mark.slow
def test_counterexample_for_equal_coefficients():
    x, y, verdict = certify.counterexample_56([1.0, 1.0, 1.0], tries=50)
    assert verdict.refuted
    assert verdict.witnesses['flat_deviation'] >= certify.NO_FLAT_MARGIN
    np.testing.assert_allclose(np.abs(x) ** 2 + np.abs(y) ** 2, 1.0, atol=1e-8)


def test_complex_operator_with_equal_flat_norms():
    space = spaces.example_plane(numerics.COMPLEX)
    report = certify.complex_operator_factor(operators.OperatorRep(space, np.eye(2)), restarts=2)
    assert report['case'] == 'equal-flats'
    assert report['complexification']
    assert report['pi2'][0] <= report['pi2'][1] + 1e-9


def off_flat_functional():
    """Peaks only at (1, -e^(-0.3i)), where the third coordinate stays well inside the disk"""
    return operators.OperatorRep(spaces.example_plane(numerics.COMPLEX), [[1.0, -0.5 * np.exp(0.3j)]])


def test_complex_operator_norming_off_the_flats():
    report = certify.complex_operator_factor(off_flat_functional(), restarts=2)
    assert report['case'] == 'non-flat'
    assert report['coordinates'] == [0, 1]
    assert report['at_flats'][0] != pytest.approx(report['at_flats'][1])
    assert report['W_norm'] <= 1 + 2e-6
    assert report['W_norm'] == pytest.approx(1.0, abs=1e-5)


def test_complex_operator_factor_rejects_an_oversized_w(monkeypatch):
    exact = operators.op_norm

    def inflated(T, **kwargs):
        cert = exact(T, **kwargs)
        return dataclasses.replace(cert, upper=cert.upper + 0.1) if T.source.ambient == 2 else cert

    monkeypatch.setattr(operators, 'op_norm', inflated)
    with pytest.raises(ContractViolation):
        certify.complex_operator_factor(off_flat_functional(), restarts=2)
