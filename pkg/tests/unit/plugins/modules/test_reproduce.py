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

import pytest

from ansible_collections.numlab.summing.plugins.modules import reproduce

from harness import AnsibleExitJson, AnsibleFailJson


def test_diagonal_inequality_case(module_args):
    module_args(dict(case='prop45', seed=1))
    with pytest.raises(AnsibleExitJson) as exc:
        reproduce.main()
    result = exc.value.result
    assert result['passed']
    assert len(result['checks']) == 3
    assert result['report']['seeds'] == dict(seed=1)
    assert result['report']['command'] == ['reproduce', '--case', 'prop45']


def test_unknown_case_is_rejected_by_the_choices(module_args):
    module_args(dict(case='ex99'))
    with pytest.raises(AnsibleFailJson) as exc:
        reproduce.main()
    assert 'value of case must be one of' in exc.value.result['msg']


def test_seed_falls_back_to_the_environment(module_args, monkeypatch):
    monkeypatch.setenv('NUMLAB_SEED', '4')
    module_args(dict(case='prop45'))
    with pytest.raises(AnsibleExitJson) as exc:
        reproduce.main()
    assert exc.value.result['report']['seeds'] == dict(seed=4)


def test_seed_defaults_to_zero(module_args, monkeypatch):
    monkeypatch.delenv('NUMLAB_SEED', raising=False)
    module_args(dict(case='prop45'))
    with pytest.raises(AnsibleExitJson) as exc:
        reproduce.main()
    assert exc.value.result['report']['seeds'] == dict(seed=0)
