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
module: distance_info
short_description: Bound the Banach-Mazur distance of a normed space to Hilbert space
description:
  - Upper bound from the minimal-volume ellipsoid map, lower bound by trace duality with both 2-summing factors
    certified by Pietsch measures.
  - The module supports check_mode.
author:
  - "numlab.summing Authors"
requirements:
  - numpy
  - scipy
options:
  k_search:
    description:
      - Restarts of the defect-ratio search whose invertible witnesses are tried as extra isomorphisms for the lower
        bound. C(0) uses the two ellipsoid maps only.
    type: int
    required: False
    default: 0
  restarts:
    description:
      - Restarts of each Pietsch measure computation.
    type: int
    required: False
    default: 20
extends_documentation_fragment:
  - numlab.summing.lab_inputs.SPACE
  - numlab.summing.lab_options
'''

EXAMPLES = r'''
- numlab.summing.distance_info:
    space: /data/spaces/linf2_real.json
  register: d

- ansible.builtin.assert:
    that:
      - d.distance.lower > 1.41
'''

RETURN = r'''
distance:
    description: Bounds and their witnesses.
    returned: success
    type: complex
    contains:
        upper:
            description: ||u|| ||u^-1|| for the ellipsoid map u.
            returned: always
            type: float
        lower:
            description: Best trace-duality bound.
            returned: always
            type: float
        upper_witness:
            description: Matrix of the ellipsoid map.
            returned: always
            type: list
        lower_witnesses:
            description: Isomorphisms tried, with the Pietsch bounds of the map and of its inverse adjoint.
            returned: always
            type: list
            elements: dict
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


class DistanceInfo(LabModule):
    def __init__(self, module):
        super(DistanceInfo, self).__init__(module)

        # Set variables
        self.k_search = self._get_param('k_search')
        self.restarts = self._get_param('restarts')

        # Initialize the return values
        self.distance = {}

        # Execute logic process
        self.process()

    @LabModule._Decorators.process_debug
    def process(self):
        space = self.load_space('space')
        bounds = self.call(ellipsoids.distance_bounds, space, k_search=self.k_search, restarts=self.restarts,
                           seed=self.seed)
        self.distance = reports.encode(reports.distance_entry(space, bounds))


def main():
    module = AnsibleModule(
        argument_spec=LabModule.argument_spec(
            space=dict(required=True, type='raw'),
            k_search=dict(required=False, type='int', default=0),
            restarts=dict(required=False, type='int', default=20)
        ),
        supports_check_mode=True
    )

    result = DistanceInfo(module)

    output = dict(
        changed=result.changed,
        distance=result.distance,
    )

    if result.debug:
        output.update(
            lab_out=result.log_out,
            lab_out_lines=result.log_lines
        )

    module.exit_json(**output)


if __name__ == '__main__':
    main()
