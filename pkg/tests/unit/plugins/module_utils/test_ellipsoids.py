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

from ansible_collections.numlab.summing.plugins.module_utils import ellipsoids, numerics, spaces
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation


def test_ellipsoid_requires_a_positive_form():
    with pytest.raises(ContractViolation):
        ellipsoids.Ellipsoid(np.diag([1.0, 0.0]))


def test_polar_and_volume():
    E = ellipsoids.Ellipsoid(np.diag([4.0, 1.0]))
    np.testing.assert_allclose(ellipsoids.polar(E).Q, np.diag([0.25, 1.0]))
    assert ellipsoids.volume_ratio(E.scaled(2), E) == pytest.approx(4.0)
    np.testing.assert_allclose(E.root() @ E.inverse_root(), np.eye(2), atol=1e-12)


def test_khachiyan_on_a_cross():
    points = np.array([[2.0, 0.0], [-2.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    Q, u, _ = ellipsoids.khachiyan(points)
    np.testing.assert_allclose(Q, np.diag([0.25, 1.0]), atol=1e-8)
    assert np.sum(u) == pytest.approx(1.0)


@pytest.mark.parametrize('field', numerics.FIELDS)
def test_minimal_ellipsoid_of_the_square(field):
    E = ellipsoids.mvee(spaces.linf(2, field))
    np.testing.assert_allclose(E.Q, np.eye(2) / 2, atol=1e-7)


def test_complex_minimal_ellipsoid_contains_the_rotated_ball():
    space = spaces.example_plane(numerics.COMPLEX)
    E = ellipsoids.mvee(space)
    points = spaces.extreme_points(space).points
    for theta in np.linspace(0, 2 * np.pi, 7):
        assert np.max(E.form((np.exp(1j * theta) * points).T)) <= 1 + 1e-7


def test_maximal_ellipsoid_of_the_square():
    E = ellipsoids.inscribed(spaces.linf(2))
    np.testing.assert_allclose(E.Q, np.eye(2), atol=1e-7)


def test_mvee_contains_the_ball():
    space = spaces.example_plane()
    E = ellipsoids.mvee(space)
    ext = spaces.extreme_points(space)
    assert np.max(E.form(ext.points.T)) <= 1 + 1e-7


def test_contact_decomposition_resolves_the_identity():
    space = spaces.linf(2)
    E = ellipsoids.mvee(space)
    decomposition = ellipsoids.contact_points(space, E)
    assert len(decomposition) == 4
    assert decomposition.total == pytest.approx(space.dim, abs=1e-8)
    assert decomposition.residual <= 1e-8


def test_contact_points_need_enough_contacts():
    space = spaces.linf(2)
    with pytest.raises(ContractViolation):
        ellipsoids.contact_points(space, ellipsoids.Ellipsoid(np.eye(2) / 4))


def test_homothety_on_the_square():
    report = ellipsoids.homothety_check(spaces.linf(2))
    np.testing.assert_allclose(report.s_numbers, [1 / np.sqrt(2)] * 2, atol=1e-7)
    assert report.sum_sq == pytest.approx(1.0, abs=1e-7)
    assert report.homothety_defect <= 1e-6
    assert report.volume_ok
    assert not report.complex_exponent


def test_distance_of_the_square():
    bounds = ellipsoids.distance_bounds(spaces.linf(2), restarts=4)
    assert bounds.upper == pytest.approx(np.sqrt(2), abs=1e-6)
    assert bounds.lower <= bounds.upper + 1e-9
    assert bounds.lower == pytest.approx(np.sqrt(2), abs=1e-4)


def test_distance_of_a_nearly_euclidean_plane():
    bounds = ellipsoids.distance_bounds(spaces.disk_space(8), restarts=4)
    assert 0.9 < bounds.lower <= bounds.upper + 1e-9
    assert bounds.upper <= 1 / np.cos(np.pi / 16) + 1e-6


@pytest.mark.parametrize('field,dim', [(numerics.REAL, 2), (numerics.COMPLEX, 2), (numerics.COMPLEX, 3)])
def test_distance_of_the_cube(field, dim):
    bounds = ellipsoids.distance_bounds(spaces.linf(dim, field), restarts=4)
    assert bounds.lower <= bounds.upper + 1e-9
    assert bounds.upper == pytest.approx(np.sqrt(dim), abs=1e-6)
    assert bounds.lower == pytest.approx(np.sqrt(dim), abs=1e-3)
