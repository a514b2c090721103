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

from ansible_collections.numlab.summing.plugins.modules import john_info

from harness import AnsibleExitJson


def test_square(module_args):
    module_args(dict(space=dict(field='real', basis=[[1, 0], [0, 1]]), homothety=True))
    with pytest.raises(AnsibleExitJson) as exc:
        john_info.main()
    result = exc.value.result
    assert result['john']['Q'] == [[pytest.approx(0.5), pytest.approx(0.0, abs=1e-9)],
                                   [pytest.approx(0.0, abs=1e-9), pytest.approx(0.5)]]
    assert result['john']['total'] == pytest.approx(2.0)
    assert result['homothety']['homothety_defect'] <= 1e-6


def test_homothety_is_optional(module_args):
    module_args(dict(space=dict(field='real', basis=[[1, 0], [0, 1]])))
    with pytest.raises(AnsibleExitJson) as exc:
        john_info.main()
    assert 'homothety' not in exc.value.result
