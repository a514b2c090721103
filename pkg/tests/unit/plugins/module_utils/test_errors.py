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

from ansible_collections.numlab.summing.plugins.module_utils import errors
from ansible_collections.numlab.summing.plugins.module_utils.errors import (
    ContractViolation, GapNotReached, InputError, LabError, LabWarning)


def test_details_travel_with_the_error():
    err = ContractViolation('Form is not Hermitian', deviation=0.5)
    assert err.to_dict() == dict(violation='contract', message='Form is not Hermitian', deviation=0.5)
    assert isinstance(err, LabError)


def test_instance_dict_names_the_violation():
    state = GapNotReached('Gap not reached', certificate='best', gap=0.1).__dict__
    assert state['violation'] == 'gap'
    assert state['message'] == 'Gap not reached'
    assert state['certificate'] == 'best'


def test_input_error_is_prefixed_with_its_position():
    err = InputError('Missing key "basis"', source='plane.json', position='$')
    assert str(err) == 'plane.json:$: Missing key "basis"'
    assert str(InputError('Empty input')) == 'Empty input'
    assert str(InputError('Bad entry', position='$.basis[0]')) == '$.basis[0]: Bad entry'


def test_warning_goes_to_the_handler():
    seen = []
    errors.warn(seen.append, 'Projection re-orthonormalized', deviation=1e-6)
    assert len(seen) == 1
    assert isinstance(seen[0], LabWarning)
    assert seen[0].details == dict(deviation=1e-6)


def test_warning_without_handler_is_logged(caplog):
    with caplog.at_level(logging.WARNING, logger=errors.__name__):
        errors.warn(None, 'Gap not reached')
    assert 'Gap not reached' in caplog.text
