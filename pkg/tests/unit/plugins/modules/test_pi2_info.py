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

from ansible_collections.numlab.summing.plugins.modules import pi2_info

from harness import AnsibleExitJson, AnsibleFailJson


LINF2 = dict(field='real', basis=[[1, 0], [0, 1]])


def test_pi2_of_the_identity(module_args):
    module_args(dict(operator=dict(space=LINF2, matrix=[[1, 0], [0, 1]]), restarts=2))
    with pytest.raises(AnsibleExitJson) as exc:
        pi2_info.main()
    certificate = exc.value.result['certificate']
    assert not exc.value.result['changed']
    assert certificate['kind'] == 'pi2'
    assert certificate['lower'] == pytest.approx(2 ** 0.5, abs=1e-6)
    assert certificate['upper'] == pytest.approx(2 ** 0.5, abs=1e-6)
    assert 'lab_out' not in exc.value.result


def test_debug_log_is_returned(module_args):
    module_args(dict(operator=dict(space=LINF2, matrix=[[1, 0]]), restarts=1, debug=True))
    with pytest.raises(AnsibleExitJson) as exc:
        pi2_info.main()
    assert 'pi_2 in' in exc.value.result['lab_out']
    assert exc.value.result['lab_out_lines']


def test_bad_operator_fails(module_args):
    module_args(dict(operator=dict(space=LINF2, matrix=[[1, 0, 0]])))
    with pytest.raises(AnsibleFailJson) as exc:
        pi2_info.main()
    assert exc.value.result['failed']
    assert 'Matrix rows must have length 2' in exc.value.result['msg']
    assert '$.operator.matrix' in exc.value.result['error']


def test_missing_operator_file(module_args, tmp_path):
    module_args(dict(operator=str(tmp_path / 'absent.json')))
    with pytest.raises(AnsibleFailJson):
        pi2_info.main()
