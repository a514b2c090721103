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
from ansible_collections.numlab.summing.plugins.module_utils import reports
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule

ANSIBLE_METADATA = {'metadata_version': '1.1',
                    'status': ['preview'],
                    'supported_by': 'community'}

DOCUMENTATION = r'''
---
module: report_verify
short_description: Re-check the certificates of a report
description:
  - Walk a report and re-check every serialized certificate with linear algebra only, without running any
    optimizer. Witness square functions, Pietsch bounds, vertex enumerations and contact conditions are
    recomputed from the stored data.
  - The task fails when a certificate is violated, naming the first violation.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  report:
    description:
      - Path to a report file, or the report itself as a dictionary.
    type: raw
    required: True
extends_documentation_fragment:
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
- numlab.summing.report_verify:
    report: /data/reports/ex23-real.json

# Verify the output of a reproduction case directly
- numlab.summing.reproduce:
    case: prop45
  register: run

- numlab.summing.report_verify:
    report: "{{ run.report }}"
'''

RETURN = r'''
certificates:
    description: Number of certificates checked.
    returned: success
    type: int
violations:
    description: Violations found, each prefixed with the JSON path of its certificate.
    returned: always
    type: list
    elements: str
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


class ReportVerify(LabModule):
    def __init__(self, module):
        super(ReportVerify, self).__init__(module)

        # Set variables
        self.report = self._get_param('report')

        # Initialize the return values
        self.certificates = 0
        self.violations = []

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        report = self.report
        if isinstance(report, str):
            report = self.call(reports.load_json, report)
        if not isinstance(report, dict):
            self.module.fail_json(msg='A report must be a dictionary')
        self.certificates = reports.count_certificates(report)
        self.violations = reports.verify(report)
        if self.violations:
            self.module.fail_json(msg=self.violations[0], violations=self.violations,
                                  certificates=self.certificates)


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            report=dict(required=True, type='raw')
        ),
        supports_check_mode=True
    )

    result = ReportVerify(module)

    output = dict(
        changed=result.changed,
        certificates=result.certificates,
        violations=result.violations,
    )

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
