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

from ansible_collections.numlab.summing.plugins.module_utils import numerics
from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation


def test_herm_eig_identity():
    w, V = numerics.herm_eig(np.eye(3))
    np.testing.assert_allclose(w, [1, 1, 1])
    np.testing.assert_allclose(V.T @ V, np.eye(3), atol=1e-12)


def test_herm_eig_diagonal_is_sorted():
    w, V = numerics.herm_eig(np.diag([4.0, 1.0]))
    np.testing.assert_allclose(w, [1, 4])
    np.testing.assert_allclose(np.abs(V), [[0, 1], [1, 0]], atol=1e-12)


@pytest.mark.parametrize('cplx', [False, True])
def test_herm_eig_reconstructs(cplx):
    rng = np.random.default_rng(3)
    A = rng.standard_normal((5, 5))
    if cplx:
        A = A + 1j * rng.standard_normal((5, 5))
    H = A + numerics.adjoint(A)
    w, V = numerics.herm_eig(H)
    assert np.all(np.diff(w) >= 0)
    np.testing.assert_allclose(numerics.adjoint(V) @ V, np.eye(5), atol=1e-10)
    np.testing.assert_allclose((V * w) @ numerics.adjoint(V), H, atol=1e-9 * np.abs(H).max())


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        numerics.herm_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_real_field_refuses_complex_entries():
    with pytest.raises(ContractViolation):
        numerics.as_field([[1j]], numerics.REAL)
    assert numerics.as_field([[1.0]], numerics.COMPLEX).dtype == np.complex128


def test_pencil_max_eig():
    A = np.diag([2.0, 1.0])
    G = np.diag([1.0, 4.0])
    assert numerics.pencil_max_eig(A, G) == pytest.approx(2.0)


def test_pencil_max_eig_leak_is_infinite():
    A = np.diag([1.0, 1.0])
    G = np.diag([1.0, 0.0])
    assert numerics.pencil_max_eig(A, G) == float('inf')


def test_pencil_max_eig_common_null_space():
    A = np.diag([1.0, 0.0])
    G = np.diag([2.0, 0.0])
    assert numerics.pencil_max_eig(A, G) == pytest.approx(0.5)


def test_psd_check_margin():
    ok, margin = numerics.psd_check(np.diag([1.0, -1e-3]))
    assert not ok
    assert margin == pytest.approx(-1e-3)
    assert numerics.psd_check(np.diag([0.0, 2.0]))[0]


def test_range_factor():
    G = np.array([[2.0, 1.0], [1.0, 2.0]])
    R = numerics.range_factor(G)
    np.testing.assert_allclose(R.T @ R, G, atol=1e-12)
    assert numerics.range_factor(np.diag([1.0, 0.0])).shape == (1, 2)


def test_nnls_exact_and_clipped():
    A = np.eye(3)
    w, residual = numerics.nnls(A, np.array([1.0, 2.0, 0.0]))
    np.testing.assert_allclose(w, [1, 2, 0])
    assert residual == pytest.approx(0.0, abs=1e-12)
    w, residual = numerics.nnls(A, np.array([1.0, -2.0, 0.0]))
    np.testing.assert_allclose(w, [1, 0, 0])
    assert residual == pytest.approx(2.0)


def test_nnls_shape_mismatch():
    with pytest.raises(ContractViolation):
        numerics.nnls(np.eye(3), np.ones(2))


def test_project_simplex():
    p = numerics.project_simplex([0.2, 0.2, 5.0])
    np.testing.assert_allclose(p, [0, 0, 1])
    p = numerics.project_simplex([0.5, 0.5])
    np.testing.assert_allclose(p, [0.5, 0.5])
    assert np.sum(numerics.project_simplex(np.random.default_rng(0).standard_normal(7))) == pytest.approx(1.0)


def test_orthonormalize_rows():
    Q, adjustment = numerics.orthonormalize_rows(np.array([[1.0, 0.0, 1e-6]]))
    np.testing.assert_allclose(Q @ Q.T, [[1.0]], atol=1e-14)
    assert 0 < adjustment < 1e-6
