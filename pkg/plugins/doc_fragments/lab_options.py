#!/usr/bin/env python
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

class ModuleDocFragment(object):
    DOCUMENTATION = r'''
    options:
        seed:
            description:
                - Seed for every multistart search, so that repeated runs return identical results.
                - If not set, the value of the C(NUMLAB_SEED) environment variable is used, else 0.
            type: int
            required: False
            aliases:
                - random_seed
        debug:
            description:
                - Capture the library debug log.
            type: bool
            required: False
            default: False
            aliases:
                - debug_log
        strict:
            description:
                - Fail on library warnings, such as a certificate gap that did not close, instead of reporting them.
            type: bool
            required: False
            default: False
            aliases:
                - strict_errors
    '''
