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

import time

from ansible.module_utils.basic import AnsibleModule
from ansible_collections.numlab.summing.plugins.module_utils import cases, reports
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule

ANSIBLE_METADATA = {'metadata_version': '1.1',
                    'status': ['preview'],
                    'supported_by': 'community'}

DOCUMENTATION = r'''
---
module: reproduce
short_description: Run a named reproduction case
description:
  - Run the scripted pipeline of a case and compare its outcome with the case thresholds.
  - The report returned has the same layout as the command line report and can be passed to
    M(numlab.summing.report_verify).
  - With I(fail_on_mismatch), a case that does not pass fails the task.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  case:
    description:
      - The case to run.
    type: str
    required: True
    choices:
      - ex1
      - oracle
      - ex22
      - ex23-real
      - ex23-complex4
      - prop31
      - thm33-hexagon
      - lemma11
      - thm42-l13
      - lemma43
      - prop44
      - prop45
      - prop56
      - prop210
      - prop41
  trials:
    description:
      - Number of seeded trials, for the cases that run a suite. Each case has its own default.
    type: int
    required: False
  resolution:
    description:
      - Points per circle of the torus discretization, for C(thm42-l13) and C(prop41).
      - C(thm42-l13) runs at 64 and 128 points per circle unless a single resolution is given.
    type: int
    required: False
  restarts:
    description:
      - Random starts of the searches in the case.
    type: int
    required: False
  fail_on_mismatch:
    description:
      - Fail the task when a check of the case does not pass.
    type: bool
    required: False
    default: True
extends_documentation_fragment:
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
- numlab.summing.reproduce:
    case: ex23-real

- numlab.summing.reproduce:
    case: lemma43
    trials: 1000
    seed: 7
'''

RETURN = r'''
passed:
    description: Whether every check of the case passed.
    returned: success
    type: bool
checks:
    description: The checks with their measured values and thresholds.
    returned: success
    type: list
    elements: dict
    contains:
        name:
            description: What is checked.
            returned: always
            type: str
        value:
            description: Measured value.
            returned: always
            type: raw
        threshold:
            description: Threshold of the check.
            returned: always
            type: raw
        passed:
            description: Outcome.
            returned: always
            type: bool
report:
    description: The full report with every certificate produced by the case.
    returned: success
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


class Reproduce(LabModule):
    def __init__(self, module):
        super(Reproduce, self).__init__(module)

        # Set variables
        self.case = self._get_param('case')
        self.trials = self._get_param('trials')
        self.resolution = self._get_param('resolution')
        self.restarts = self._get_param('restarts')
        self.fail_on_mismatch = self._get_param('fail_on_mismatch')

        # Initialize the return values
        self.passed = False
        self.checks = []
        self.report = {}

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        started = time.perf_counter()
        outcome = self.call(cases.run_case, self.case, seed=self.seed, trials=self.trials,
                            resolution=self.resolution, restarts=self.restarts)
        report = reports.Report(command=['reproduce', '--case', self.case], inputs_digest=reports.digest(
                                dict(case=self.case)), results=outcome, seeds=dict(seed=self.seed),
                                budgets=outcome['options'], status='passed' if outcome['passed'] else 'failed',
                                wall_time=time.perf_counter() - started)
        self.report = reports.encode(report)
        self.passed = outcome['passed']
        self.checks = self.report['results']['checks']
        if not self.passed and self.fail_on_mismatch:
            failed = [c['name'] for c in self.checks if not c['passed']]
            self.module.fail_json(msg='Case %s failed: %s' % (self.case, ', '.join(failed)), checks=self.checks)


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            case=dict(required=True, type='str', choices=sorted(cases.CASES)),
            trials=dict(required=False, type='int'),
            resolution=dict(required=False, type='int'),
            restarts=dict(required=False, type='int'),
            fail_on_mismatch=dict(required=False, type='bool', default=True)
        ),
        supports_check_mode=True
    )

    result = Reproduce(module)

    output = dict(
        changed=result.changed,
        passed=result.passed,
        checks=result.checks,
        report=result.report,
    )

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
