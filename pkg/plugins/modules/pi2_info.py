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
from ansible_collections.numlab.summing.plugins.module_utils import reports, summing
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule

ANSIBLE_METADATA = {'metadata_version': '1.1',
                    'status': ['preview'],
                    'supported_by': 'community'}

DOCUMENTATION = r'''
---
module: pi2_info
short_description: Certify the 2-summing norm of an operator
description:
  - Sandwich the 2-summing norm of an operator from a sup-norm space into a Hilbert space between a witness
    system (lower bound) and a Pietsch measure (upper bound).
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  gap:
    description:
      - Target width of the certified interval.
      - When the interval stays wider, the certificate is returned flagged as not converged and a warning is issued.
    type: float
    required: False
    default: 0.000001
  restarts:
    description:
      - Number of random starts of the witness search.
    type: int
    required: False
    default: 20
extends_documentation_fragment:
  - numlab.summing.lab_inputs.OPERATOR
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
# pi_2 of the identity of l_inf^2 into L_2 of the uniform measure
- numlab.summing.pi2_info:
    operator:
      space:
        field: real
        basis: [[1, 0], [0, 1]]
      matrix: [[0.7071067811865476, 0], [0, 0.7071067811865476]]

# Operator kept in a file, with a tighter gap
- numlab.summing.pi2_info:
    operator: /data/operators/example23.json
    gap: 1e-8
    seed: 7
'''

RETURN = r'''
certificate:
    description: The certified interval with both witnesses.
    returned: success
    type: complex
    contains:
        kind:
            description: Always C(pi2).
            returned: always
            type: str
        lower:
            description: Value of the witness system, a lower bound for pi_2.
            returned: always
            type: float
        upper:
            description: Pietsch bound of the measure, an upper bound for pi_2.
            returned: always
            type: float
        gap:
            description: Width of the interval.
            returned: always
            type: float
        converged:
            description: Whether the interval is within the requested gap.
            returned: always
            type: bool
        witness:
            description: Coefficient vectors of the witness system, one column per vector.
            returned: always
            type: list
        measure:
            description: Weights of the Pietsch measure on the ambient points.
            returned: always
            type: list
            elements: float
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


class Pi2Info(LabModule):
    def __init__(self, module):
        super(Pi2Info, self).__init__(module)

        # Set variables
        self.gap = self._get_param('gap')
        self.restarts = self._get_param('restarts')

        # Initialize the return values
        self.certificate = {}

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        T = self.load_operator('operator')
        cert = self.call(summing.pi2_certify, T, gap=self.gap, restarts=self.restarts, seed=self.seed,
                         warning_handler=self.warning_handler)
        self.certificate = reports.encode(reports.pi2_entry(T, cert))


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            operator=dict(required=True, type='raw'),
            gap=dict(required=False, type='float', default=summing.DEFAULT_GAP),
            restarts=dict(required=False, type='int', default=summing.DEFAULT_RESTARTS)
        ),
        supports_check_mode=True
    )

    result = Pi2Info(module)

    output = dict(
        changed=result.changed,
        certificate=result.certificate,
    )

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
