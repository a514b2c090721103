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

"""Makes a plain checkout importable as ansible_collections.numlab.summing"""

import os
import sys
import tempfile

ROOT = os.path.dirname(os.path.abspath(__file__))


def _collections_path():
    parent, name = os.path.split(ROOT)
    grandparent, namespace = os.path.split(parent)
    if name == 'summing' and namespace == 'numlab' and os.path.basename(grandparent) == 'ansible_collections':
        return os.path.dirname(grandparent)
    base = tempfile.mkdtemp(prefix='numlab-summing-')
    os.makedirs(os.path.join(base, 'ansible_collections', 'numlab'))
    os.symlink(ROOT, os.path.join(base, 'ansible_collections', 'numlab', 'summing'))
    return base


sys.path.insert(0, _collections_path())
