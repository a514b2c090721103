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
from ansible_collections.numlab.summing.plugins.module_utils import certify, reports, summing
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule

ANSIBLE_METADATA = {'metadata_version': '1.1',
                    'status': ['preview'],
                    'supported_by': 'community'}

DOCUMENTATION = r'''
---
module: check_2sp
short_description: Decide or refute the 2-summing property of a normed space
description:
  - Search for an operator into l_2^k whose 2-summing norm exceeds its norm, for k from 1 to I(k).
  - A certified ratio above one by more than ten times the certificate gaps refutes the property
    (C(fails-certified)). A search whose best ratio stays within 1e-4 of one reports C(holds-empirically); this is
    evidence, never a proof.
  - With I(fail_on_refuted), a refuted property fails the task.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  k:
    description:
      - Largest target dimension searched.
    type: int
    required: False
    default: 2
  restarts:
    description:
      - Random starts per target dimension.
    type: int
    required: False
    default: 200
  gap:
    description:
      - Gap of each certified norm and 2-summing norm in the search.
    type: float
    required: False
    default: 0.000001
  fail_on_refuted:
    description:
      - Fail the task when the property is refuted.
    type: bool
    required: False
    default: False
extends_documentation_fragment:
  - numlab.summing.lab_inputs.SPACE
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
# Real l_inf^2 has the property
- numlab.summing.check_2sp:
    space:
      field: real
      basis: [[1, 0], [0, 1]]

# Real l_inf^3 does not; stop the play when it is refuted
- numlab.summing.check_2sp:
    space: /data/spaces/linf3_real.json
    restarts: 50
    fail_on_refuted: yes
'''

RETURN = r'''
verdict:
    description: The verdict with its witnesses and the budget it was reached with.
    returned: success
    type: complex
    contains:
        status:
            description: Outcome of the search.
            returned: always
            type: str
            sample:
                - holds-empirically
                - fails-certified
                - inconclusive
        margin:
            description: Best ratio found, minus one.
            returned: always
            type: float
        witnesses:
            description: Operator, witness system and norm certificate of the best ratio.
            returned: always
            type: dict
        budget:
            description: Search parameters.
            returned: always
            type: dict
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


class Check2SP(LabModule):
    def __init__(self, module):
        super(Check2SP, self).__init__(module)

        # Set variables
        self.k = self._get_param('k')
        self.restarts = self._get_param('restarts')
        self.gap = self._get_param('gap')
        self.fail_on_refuted = self._get_param('fail_on_refuted')

        # Initialize the return values
        self.verdict = {}

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        space = self.load_space('space')
        verdict = self.call(certify.check_2sp, space, k_max=self.k, restarts=self.restarts, seed=self.seed,
                            gap=self.gap)
        self.verdict = reports.encode(reports.verdict_entry(space, verdict))
        if verdict.refuted and self.fail_on_refuted:
            self.module.fail_json(msg='The 2-summing property is refuted with ratio %.12g' % (1 + verdict.margin),
                                  verdict=self.verdict)


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            space=dict(required=True, type='raw'),
            k=dict(required=False, type='int', default=2),
            restarts=dict(required=False, type='int', default=200),
            gap=dict(required=False, type='float', default=summing.DEFAULT_GAP),
            fail_on_refuted=dict(required=False, type='bool', default=False)
        ),
        supports_check_mode=True
    )

    result = Check2SP(module)

    output = dict(
        changed=result.changed,
        verdict=result.verdict,
    )

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
