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

import logging

import pytest

from ansible_collections.numlab.summing.plugins.module_utils.errors import ContractViolation, warn
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule


class Failed(Exception):
    pass


class FakeModule(object):
    def __init__(self, **params):
        self.params = dict(dict(seed=None, debug=False, strict=False), **params)
        self.warnings = []

    def fail_json(self, **kwargs):
        raise Failed(kwargs)

    def warn(self, message):
        self.warnings.append(message)


class Sample(LabModule):
    def __init__(self, module):
        super(Sample, self).__init__(module)
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        logging.getLogger('ansible_collections.numlab.summing.plugins.module_utils.sample').debug('sampling')


def test_common_options_are_appended():
    spec = LabModule.argument_spec(space=dict(required=True, type='raw'))
    assert set(spec) == {'space', 'seed', 'debug', 'strict'}
    assert 'default' not in spec['seed']
    assert spec['seed']['aliases'] == ['random_seed']


def test_missing_seed_is_zero():
    assert Sample(FakeModule()).seed == 0
    assert Sample(FakeModule(seed=5)).seed == 5


def test_debug_captures_the_library_log():
    sample = Sample(FakeModule(debug=True))
    assert 'sampling' in sample.log_out
    assert any('sampling' in line for line in sample.log_lines)
    assert Sample(FakeModule()).log_out is None


def test_library_errors_fail_the_module():
    sample = Sample(FakeModule())

    def broken():
        raise ContractViolation('Form is not Hermitian', deviation=0.5)

    with pytest.raises(Failed) as exc:
        sample.call(broken)
    result = exc.value.args[0]
    assert result['msg'] == 'Form is not Hermitian'
    assert "'violation': 'contract'" in result['error']


def test_warnings_are_relayed_unless_strict():
    module = FakeModule()
    warn(Sample(module).warning_handler, 'Gap not reached')
    assert module.warnings == ['Gap not reached']
    with pytest.raises(Failed) as exc:
        warn(Sample(FakeModule(strict=True)).warning_handler, 'Gap not reached', gap=0.1)
    assert exc.value.args[0]['msg'] == 'Gap not reached'


def test_inline_space_errors_name_the_option():
    sample = Sample(FakeModule(space=dict(field='real')))
    with pytest.raises(Failed) as exc:
        sample.load_space('space')
    assert '$.space' in exc.value.args[0]['error']
