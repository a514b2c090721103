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
from ansible_collections.numlab.summing.plugins.module_utils import operators, reports
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule

ANSIBLE_METADATA = {'metadata_version': '1.1',
                    'status': ['preview'],
                    'supported_by': 'community'}

DOCUMENTATION = r'''
---
module: opnorm_info
short_description: Certify the norm of an operator into a Hilbert space
description:
  - Compute the operator norm with a norm-attaining witness and an upper bound.
  - Real spaces are solved exactly on the vertices of the unit ball; complex spaces use a Lipschitz-bounded grid
    search whose gap is reported.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  gap:
    description:
      - Target width of the certified interval for complex spaces.
    type: float
    required: False
    default: 0.000001
extends_documentation_fragment:
  - numlab.summing.lab_inputs.OPERATOR
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
- numlab.summing.opnorm_info:
    operator: /data/operators/example23.json
  register: norm

- ansible.builtin.debug:
    msg: "||T|| <= {{ norm.certificate.upper }}"
'''

RETURN = r'''
certificate:
    description: The certified interval for the operator norm.
    returned: success
    type: complex
    contains:
        lower:
            description: Norm of the image of the witness.
            returned: always
            type: float
        upper:
            description: Certified upper bound.
            returned: always
            type: float
        method:
            description: How the upper bound was obtained.
            returned: always
            type: str
            sample:
                - vertex-exact
                - lipschitz-grid
                - hull-rows
        witness:
            description: Coefficients of a unit vector attaining the lower bound.
            returned: always
            type: list
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


class OperatorNormInfo(LabModule):
    def __init__(self, module):
        super(OperatorNormInfo, self).__init__(module)

        # Set variables
        self.gap = self._get_param('gap')

        # Initialize the return values
        self.certificate = {}

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        T = self.load_operator('operator')
        cert = self.call(operators.op_norm, T, gap=self.gap, seed=self.seed, strict=self.strict,
                         warning_handler=self.warning_handler)
        self.certificate = reports.encode(reports.norm_entry(T, cert))


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            operator=dict(required=True, type='raw'),
            gap=dict(required=False, type='float', default=operators.DEFAULT_GAP)
        ),
        supports_check_mode=True
    )

    result = OperatorNormInfo(module)

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
