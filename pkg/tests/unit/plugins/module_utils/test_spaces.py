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

from ansible_collections.numlab.summing.plugins.module_utils import numerics, spaces
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, ResolutionRefused


def test_example_plane_norm():
    X = spaces.example_plane()
    assert X.norm([1.0, 1.0]) == pytest.approx(np.sqrt(2))
    assert X.norm([1.0, -1.0]) == pytest.approx(1.0)


def test_dependent_basis_is_rejected():
    with pytest.raises(ContractViolation):
        spaces.SupSpace(numerics.REAL, [[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(ContractViolation):
        spaces.SupSpace(numerics.REAL, [[1.0, 0.0, 0.0]])


def test_norm_is_field_homogeneous():
    X = spaces.example_plane(numerics.COMPLEX)
    c = np.array([0.3 + 0.1j, -0.7j])
    z = 0.6 - 0.8j
    assert X.norm(z * c) == pytest.approx(abs(z) * X.norm(c))


def test_measure_weights():
    mu = spaces.MeasureWeights.on_subset(4, [0, 2])
    np.testing.assert_allclose(mu.weights, [0.5, 0, 0.5, 0])
    assert mu.support == (0, 2)
    with pytest.raises(ContractViolation):
        spaces.MeasureWeights([0.5, 0.6])
    with pytest.raises(ContractViolation):
        spaces.MeasureWeights([1.5, -0.5])


def test_l2_gram_uniform_linf():
    G = spaces.l2_gram(spaces.linf(3), spaces.MeasureWeights.uniform(3))
    np.testing.assert_allclose(G, np.eye(3) / 3)


def test_real_vertices_of_linf_and_l1():
    square = spaces.extreme_points(spaces.linf(2))
    assert square.kind == spaces.EXACT
    assert len(square) == 4
    assert square.error_bound == 0.0
    octahedron = spaces.extreme_points(spaces.l1_signs(3))
    assert len(octahedron) == 6
    np.testing.assert_allclose(np.sort(np.abs(octahedron.points).sum(axis=1)), np.ones(6))


def test_hexagon_vertices_of_example_plane():
    ext = spaces.extreme_points(spaces.example_plane())
    assert len(ext) == 6
    norms = spaces.norm_eval(spaces.example_plane(), ext.points.T)
    np.testing.assert_allclose(norms, 1.0)


def test_complex_samples_are_on_the_sphere():
    X = spaces.linf(2, numerics.COMPLEX)
    ext = spaces.extreme_points(X, resolution=8)
    assert ext.kind == spaces.TORUS
    np.testing.assert_allclose(X.norm(ext.points.T), 1.0, atol=1e-12)
    assert ext.error_bound > 0


def test_complex_resolution_must_be_a_power_of_two():
    with pytest.raises(ContractViolation):
        spaces.extreme_points(spaces.linf(2, numerics.COMPLEX), resolution=12)


def test_dual_of_real_linf_is_l1():
    D = spaces.dual_embed(spaces.linf(3))
    rng = np.random.default_rng(0)
    for c in rng.standard_normal((20, 3)):
        assert D.norm(c) == pytest.approx(np.abs(c).sum())


def test_dual_embed_twice_is_isometric():
    X = spaces.example_plane()
    DD = spaces.dual_embed(spaces.dual_embed(X))
    rng = np.random.default_rng(1)
    for c in rng.standard_normal((100, 2)):
        assert DD.norm(c) == pytest.approx(X.norm(c), abs=1e-8)


def test_dual_embed_refuses_coarse_resolution():
    with pytest.raises(ResolutionRefused):
        spaces.dual_embed(spaces.linf(3, numerics.COMPLEX), resolution=2)


def test_subspace_keeps_the_norm():
    X = spaces.linf(3)
    Y = spaces.subspace(X, [[1, 0], [0, 1], [1, 1]])
    assert Y.ambient == 3 and Y.dim == 2
    assert Y.norm([1.0, 1.0]) == pytest.approx(2.0)


def test_binomial_counts_active_sets():
    assert spaces._binomial(5, 2) == 10
    assert spaces._binomial(3, 3) == 1
    assert spaces._binomial(2, 3) == 0
