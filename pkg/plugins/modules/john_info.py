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
from ansible_collections.numlab.summing.plugins.module_utils import ellipsoids, reports
from ansible_collections.numlab.summing.plugins.module_utils.lab_common import LabModule

ANSIBLE_METADATA = {'metadata_version': '1.1',
                    'status': ['preview'],
                    'supported_by': 'community'}

DOCUMENTATION = r'''
---
module: john_info
short_description: Gather the John ellipsoids of a normed space
description:
  - Compute the minimal-volume ellipsoid around the unit ball, its contact points and the weights resolving the
    identity, together with the maximal-volume ellipsoid inside the unit ball.
  - Optionally compare the two ellipsoids through the s-numbers of the composed ellipsoid maps.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  resolution:
    description:
      - Points per circle when sampling the extreme points of a complex unit ball.
    type: int
    required: False
    default: 64
  homothety:
    description:
      - Also report the s-numbers and the homothety defect of the inscribed ellipsoid against the outer one.
    type: bool
    required: False
    default: False
extends_documentation_fragment:
  - numlab.summing.lab_inputs.SPACE
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
# John decomposition of real l_1^3
- numlab.summing.john_info:
    space: /data/spaces/l1_3.json

# Homothety check on complex l_inf^2, inline
- numlab.summing.john_info:
    space:
      field: complex
      basis: [[1, 0], [0, 1]]
    homothety: yes
'''

RETURN = r'''
john:
    description: The outer ellipsoid with its contact decomposition.
    returned: success
    type: complex
    contains:
        Q:
            description: Form of the ellipsoid {c : c* Q c <= 1} in basis coefficients.
            returned: always
            type: list
        contact_points:
            description: Extreme points of the unit ball on the boundary of the ellipsoid.
            returned: always
            type: list
        weights:
            description: Nonnegative weights summing to the dimension.
            returned: always
            type: list
            elements: float
        residual:
            description: Residual of the identity resolution.
            returned: always
            type: float
inscribed:
    description: Form of the maximal-volume ellipsoid inside the unit ball.
    returned: success
    type: dict
homothety:
    description: s-numbers, volume product and homothety defect.
    returned: when I(homothety=true)
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


class JohnInfo(LabModule):
    def __init__(self, module):
        super(JohnInfo, self).__init__(module)

        # Set variables
        self.resolution = self._get_param('resolution')
        self.homothety_check = self._get_param('homothety')

        # Initialize the return values
        self.john = {}
        self.inscribed = {}
        self.homothety = None

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        space = self.load_space('space')
        E = self.call(ellipsoids.mvee, space, resolution=self.resolution)
        decomposition = self.call(ellipsoids.contact_points, space, E, resolution=self.resolution)
        E2 = self.call(ellipsoids.inscribed, space, resolution=self.resolution, warning_handler=self.warning_handler)
        self.john = reports.encode(reports.john_entry(space, E, decomposition))
        self.inscribed = reports.encode(reports.ellipsoid_to_dict(E2))
        if self.homothety_check:
            self.homothety = reports.encode(self.call(ellipsoids.homothety_check, space, resolution=self.resolution))


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            space=dict(required=True, type='raw'),
            resolution=dict(required=False, type='int', default=64),
            homothety=dict(required=False, type='bool', default=False)
        ),
        supports_check_mode=True
    )

    result = JohnInfo(module)

    output = dict(
        changed=result.changed,
        john=result.john,
        inscribed=result.inscribed,
    )

    if result.homothety is not None:
        output.update(homothety=result.homothety)

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
