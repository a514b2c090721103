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

from ansible.module_utils.basic import AnsibleModule
from ansible_collections.numlab.summing.plugins.module_utils import certify, reports
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule

ANSIBLE_METADATA = {'metadata_version': '1.1',
                    'status': ['preview'],
                    'supported_by': 'community'}

DOCUMENTATION = r'''
---
module: flats_info
short_description: Gather the flat vectors of a complex space
description:
  - Find unit vectors whose values all have modulus one, up to unimodular factors.
  - Two-dim subspaces of complex l_inf^3 are solved in closed form, other spaces by a multistart search.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  starts:
    description:
      - Random starts of the deviation search.
    type: int
    required: False
    default: 64
extends_documentation_fragment:
  - numlab.summing.lab_inputs.SPACE
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
- numlab.summing.flats_info:
    space:
      field: complex
      basis: [[1, 0, 0.8], [0, 1, 0.8]]
'''

RETURN = r'''
flats:
    description: Flat vectors found, as coefficients with their deviation from flatness.
    returned: success
    type: list
    elements: dict
    contains:
        coefficients:
            description: Basis coefficients of the vector, complex entries as [re, im] pairs.
            returned: always
            type: list
        deviation:
            description: Largest distance of a value modulus from one.
            returned: always
            type: float
lab_out:
    description: Returns the captured library log.
    returned: when supported
    type: str
lab_out_lines:
    description: Returns a list of each line of the captured library log.
    returned: when supported
    type: list
    elements: str
'''


class FlatsInfo(LabModule):
    def __init__(self, module):
        super(FlatsInfo, self).__init__(module)

        # Set variables
        self.starts = self._get_param('starts')

        # Initialize the return values
        self.flats = []

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        space = self.load_space('space')
        found = self.call(certify.flat_vector_search, space, starts=self.starts, seed=self.seed)
        self.flats = reports.encode(reports.flats_entry(space, found))['flats']


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            space=dict(required=True, type='raw'),
            starts=dict(required=False, type='int', default=certify.DEFAULT_STARTS)
        ),
        supports_check_mode=True
    )

    result = FlatsInfo(module)

    output = dict(
        changed=result.changed,
        flats=result.flats,
    )

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
