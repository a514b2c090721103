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
Error and warning types raised by the numlab.summing library
"""

import logging


LOG = logging.getLogger(__name__)


class LabError(Exception):
    """Base error carrying a message and a structured payload."""
    violation = 'error'

    def __init__(self, message, **details):
        super(LabError, self).__init__(message)
        self.violation = type(self).violation
        self.message = message
        self.details = details

    def to_dict(self):
        return dict(violation=self.violation, message=self.message, **self.details)


class ContractViolation(LabError):
    violation = 'contract'


class ResolutionRefused(LabError):
    violation = 'resolution'


class PreconditionFailed(LabError):
    violation = 'precondition'


class GapNotReached(LabError):
    """A certified sandwich did not close within its budget."""
    violation = 'gap'

    def __init__(self, message, certificate=None, **details):
        super(GapNotReached, self).__init__(message, **details)
        self.certificate = certificate


class InputError(LabError):
    """Malformed space, operator or report input; position is a JSON path."""
    violation = 'input'

    def __init__(self, message, source=None, position=None, **details):
        super(InputError, self).__init__(message, source=source, position=position, **details)
        self.source = source
        self.position = position

    def __str__(self):
        where = ':'.join(str(p) for p in (self.source, self.position) if p)
        return '%s: %s' % (where, self.message) if where else self.message


class LabWarning(object):
    def __init__(self, message, **details):
        self.message = message
        self.details = details


def warn(handler, message, **details):
    """Deliver a warning to handler, or to the log when no handler is set"""
    if handler is None:
        LOG.warning(message)
    else:
        handler(LabWarning(message, **details))
