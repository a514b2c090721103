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

from ansible_collections.numlab.summing.plugins.modules import opnorm_info

from harness import AnsibleExitJson


def plane(field):
    r = 0.5 ** 0.5
    return dict(field=field, basis=[[1, 0, r], [0, 1, r]])


def test_exact_norm_on_a_real_plane(module_args):
    module_args(dict(operator=dict(space=plane('real'), matrix=[[1, 0], [0, 1]])))
    with pytest.raises(AnsibleExitJson) as exc:
        opnorm_info.main()
    certificate = exc.value.result['certificate']
    assert certificate['method'] == 'vertex-exact'
    assert certificate['upper'] == pytest.approx(2 ** 0.5)
