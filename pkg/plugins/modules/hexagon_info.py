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
module: hexagon_info
short_description: Find a hexagonal section of a real maximal-distance space
description:
  - Build a two-dim section from the contact points of the John ellipsoids of a real space of dimension at least
    three, and count the contact points of the section's own inscribed ellipse.
  - Six contact points mean the section is a regular hexagon in its John position, and the norming functionals
    at three of them yield an operator with 2-summing norm above its norm.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  gap:
    description:
      - Gap of the certificates for the dual operator.
    type: float
    required: False
    default: 0.000001
extends_documentation_fragment:
  - numlab.summing.lab_inputs.SPACE
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
- numlab.summing.hexagon_info:
    space:
      field: real
      basis: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
'''

RETURN = r'''
hexagon:
    description: The section and its contact data.
    returned: success
    type: complex
    contains:
        basis:
            description: Coefficients of the two spanning vectors of the section.
            returned: always
            type: list
        section_Q:
            description: Form of the inscribed ellipse of the section.
            returned: always
            type: list
        contact_count:
            description: Contact points of that ellipse with the unit sphere of the section.
            returned: always
            type: int
        pairing_deviation:
            description: Largest deviation of the contact pairing from 1/n.
            returned: always
            type: float
certified:
    description: Whether the section has at least six contact points.
    returned: success
    type: bool
dual_margin:
    description: Ratio minus one of the dual operator built from norming functionals.
    returned: when the section is certified
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


class HexagonInfo(LabModule):
    def __init__(self, module):
        super(HexagonInfo, self).__init__(module)

        # Set variables
        self.gap = self._get_param('gap')

        # Initialize the return values
        self.hexagon = {}
        self.certified = False
        self.dual_margin = None

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        space = self.load_space('space')
        section = self.call(certify.hexagon_section, space, gap=self.gap, seed=self.seed)
        self.hexagon = reports.encode(reports.hexagon_entry(space, section))
        self.certified = section.certified
        if section.dual_certificate:
            self.dual_margin = section.dual_certificate['verdict'].margin


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            space=dict(required=True, type='raw'),
            gap=dict(required=False, type='float', default=1e-6)
        ),
        supports_check_mode=True
    )

    result = HexagonInfo(module)

    output = dict(
        changed=result.changed,
        hexagon=result.hexagon,
        certified=result.certified,
    )

    if result.dual_margin is not None:
        output.update(dual_margin=result.dual_margin)

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
