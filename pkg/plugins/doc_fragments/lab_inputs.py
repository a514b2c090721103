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
    SPACE = r'''
    options:
        space:
            description:
                - The normed space, as a path to a space file or as an inline dictionary.
                - A space has a C(field) (C(real) or C(complex)), an optional C(ambient) size N and a C(basis)
                  given as a list of columns of length N. Complex entries are C([re, im]) pairs.
            type: raw
            required: True
    '''

    OPERATOR = r'''
    options:
        operator:
            description:
                - The operator into a Hilbert space, as a path to an operator file or as an inline dictionary.
                - An operator has a C(space) (inline, or a path relative to the operator file), an optional
                  C(target_dim) k and a k x n C(matrix) acting on basis coefficients.
            type: raw
            required: True
    '''
