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

"""
A common Ansible Module for shared functions in the numlab.summing Collection
"""

import io
import logging
from functools import wraps

from ansible.module_utils.basic import env_fallback

from ansible_collections.numlab.summing.plugins.module_utils import reports
from ansible_collections.numlab.summing.plugins.module_utils.errors import LabError


ROOT_LOGGER = 'ansible_collections.numlab.summing'
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


class LabModule(object):
    """A base lab module class for common parameters, fields, and methods."""
    class _Decorators(object):
        @classmethod
        def process_debug(cls, f):
            @wraps(f)
            def _impl(self, *args, **kwargs):
                if not self.debug:
                    return f(self, *args, **kwargs)
                stream = io.StringIO()
                handler = logging.StreamHandler(stream)
                handler.setFormatter(logging.Formatter(LOG_FORMAT))
                logger = logging.getLogger(ROOT_LOGGER)
                level = logger.level
                logger.addHandler(handler)
                logger.setLevel(logging.DEBUG)
                try:
                    return f(self, *args, **kwargs)
                finally:
                    logger.removeHandler(handler)
                    logger.setLevel(level)
                    self.log_out = stream.getvalue()
                    self.log_lines.extend(self.log_out.splitlines())

            return _impl

    def __init__(self, module):
        # Set common parameters
        self.module = module
        seed = self._get_param('seed')
        self.seed = 0 if seed is None else seed
        self.debug = self._get_param('debug', False)
        self.strict = self._get_param('strict', False)

        # Initialize common return values
        self.log_out = None
        self.log_lines = []
        self.changed = False

    # Private functions

    def _get_param(self, param, default=None):
        """A module parameter, or default when the parameter is absent"""
        if self.module is not None:
            return self.module.params[param] if param in self.module.params else default
        return default

    def _lab_module_throw_error(self, error: 'LabError'):
        """Error handler for the numerical library"""
        self.module.fail_json(msg=str(error.message), error=str(error.__dict__))

    def _lab_module_throw_warning(self, warning):
        """Warning handler for the numerical library"""
        if self.strict:
            self.module.fail_json(msg=str(warning.message), warning=str(warning.details))
        else:
            self.module.warn(warning.message)

    @property
    def warning_handler(self):
        return self._lab_module_throw_warning

    def call(self, f, *args, **kwargs):
        """Runs a library function, routing its errors to fail_json"""
        try:
            return f(*args, **kwargs)
        except LabError as err:
            self._lab_module_throw_error(err)

    def load_space(self, param):
        """A space option given either inline or as a path to a space file"""
        value = self._get_param(param)
        if isinstance(value, str):
            return self.call(reports.load_space, value)
        return self.call(reports.space_from_dict, value, None, '$.%s' % param)

    def load_operator(self, param):
        value = self._get_param(param)
        if isinstance(value, str):
            return self.call(reports.load_operator, value)
        return self.call(reports.operator_from_dict, value, None, '$.%s' % param)

    @staticmethod
    def argument_spec(**spec):
        """The given options plus seed, debug and strict"""
        return dict(
            **spec,
            seed=dict(required=False, type='int', aliases=['random_seed'],
                      fallback=(env_fallback, ['NUMLAB_SEED'])),
            debug=dict(required=False, type='bool', default=False, aliases=['debug_log']),
            strict=dict(required=False, type='bool', default=False, aliases=['strict_errors']),
        )

