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
Command line front end.

The report goes to standard output as JSON, a one-line summary to standard
error. Exit codes: 0 success, 2 property refuted or check failed, 1 usage
or input error.
"""

import argparse
import logging
import os
import sys
import time

from ansible_collections.numlab.summing.plugins.module_utils import (cases, certify, ellipsoids, operators, reports,
                                                                     spaces, summing)
from ansible_collections.numlab.summing.plugins.module_utils.errors import GapNotReached, InputError, LabError


LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2

SEED_VARIABLE = 'NUMLAB_SEED'
VERBOSITY = (logging.WARNING, logging.INFO, logging.DEBUG)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises on usage errors instead of exiting with argparse's own status"""

    def error(self, message):
        raise UsageError('%s: %s' % (self.prog, message))


def _default_seed():
    value = os.environ.get(SEED_VARIABLE)
    if value is None or value == '':
        return 0
    try:
        return int(value)
    except ValueError:
        raise UsageError('%s must be an integer, got %r' % (SEED_VARIABLE, value))


def build_parser():
    parser = _Parser(prog='numlab-summing', description='Certified 2-summing norms, ellipsoids and verdicts')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='INFO with -v, DEBUG with -vv')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    def command(name, help_text, source=None):
        p = sub.add_parser(name, help=help_text)
        if source:
            p.add_argument('path', metavar='%s-file' % source)
        p.add_argument('--seed', type=int, default=None, help='random seed, default from %s' % SEED_VARIABLE)
        return p

    p = command('pi2', 'certified 2-summing norm of an operator', 'operator')
    p.add_argument('--gap', type=float, default=summing.DEFAULT_GAP)
    p.add_argument('--restarts', type=int, default=summing.DEFAULT_RESTARTS)
    p = command('opnorm', 'certified operator norm', 'operator')
    p.add_argument('--gap', type=float, default=operators.DEFAULT_GAP)
    p = command('john', 'John ellipsoid and contact decomposition', 'space')
    p.add_argument('--svg', default=None, help='write a picture of a 2-dim real unit ball')
    p = command('distance', 'Banach-Mazur distance bounds to l_2^n', 'space')
    p.add_argument('--k-search', type=int, default=0, help='restarts of the witness search for the lower bound')
    p.add_argument('--restarts', type=int, default=summing.DEFAULT_RESTARTS)
    p = command('check2sp', 'decide or refute the 2-summing property', 'space')
    p.add_argument('--k', type=int, default=2)
    p.add_argument('--restarts', type=int, default=200)
    p.add_argument('--gap', type=float, default=summing.DEFAULT_GAP)
    p = command('flats', 'flat vectors of a complex space', 'space')
    p.add_argument('--starts', type=int, default=certify.DEFAULT_STARTS)
    p = command('hexagon', 'hexagonal section of a real maximal-distance space', 'space')
    p.add_argument('--svg', default=None, help='write a picture of the section')
    p = command('verify', 're-check every certificate of a report', 'report')
    p = command('reproduce', 'run a named reproduction case')
    p.add_argument('--case', required=True, help='one of %s' % ', '.join(sorted(cases.CASES)))
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--resolution', type=int, default=None)
    p.add_argument('--restarts', type=int, default=None)
    return parser


# Commands

def _pi2(args):
    T = reports.load_operator(args.path)
    cert = summing.pi2_certify(T, gap=args.gap, restarts=args.restarts, seed=args.seed)
    status = 'ok' if cert.converged else 'inconclusive'
    return reports.pi2_entry(T, cert), dict(gap=args.gap, restarts=args.restarts), status, EXIT_OK


def _opnorm(args):
    T = reports.load_operator(args.path)
    cert = operators.op_norm(T, gap=args.gap, seed=args.seed, strict=False)
    status = 'ok' if cert.converged else 'inconclusive'
    return reports.norm_entry(T, cert), dict(gap=args.gap, grid=operators.DEFAULT_GRID), status, EXIT_OK


def _john(args):
    space = reports.load_space(args.path)
    E = ellipsoids.mvee(space)
    decomposition = ellipsoids.contact_points(space, E)
    E2 = ellipsoids.inscribed(space)
    if args.svg:
        reports.dump_svg(args.svg, space, (E, E2), title=space.label)
    result = dict(outer=reports.john_entry(space, E, decomposition), inner=reports.ellipsoid_to_dict(E2))
    return result, dict(tol=ellipsoids.DEFAULT_TOL), 'ok', EXIT_OK


def _distance(args):
    space = reports.load_space(args.path)
    bounds = ellipsoids.distance_bounds(space, k_search=args.k_search, restarts=args.restarts, seed=args.seed)
    budget = dict(k_search=args.k_search, restarts=args.restarts, resolution=ellipsoids.DISTANCE_RESOLUTION)
    return reports.distance_entry(space, bounds), budget, 'ok', EXIT_OK


def _check2sp(args):
    space = reports.load_space(args.path)
    verdict = certify.check_2sp(space, k_max=args.k, restarts=args.restarts, seed=args.seed, gap=args.gap)
    code = EXIT_FAILED if verdict.refuted else EXIT_OK
    return reports.verdict_entry(space, verdict), verdict.budget, verdict.status, code


def _flats(args):
    space = reports.load_space(args.path)
    flats = certify.flat_vector_search(space, starts=args.starts, seed=args.seed)
    return reports.flats_entry(space, flats), dict(starts=args.starts), '%d flat' % len(flats), EXIT_OK


def _hexagon(args):
    space = reports.load_space(args.path)
    section = certify.hexagon_section(space, seed=args.seed)
    if args.svg:
        plane = spaces.subspace(space, section.basis)
        reports.dump_svg(args.svg, plane, (ellipsoids.Ellipsoid(section.section_form),), title='hexagon')
    code = EXIT_OK if section.certified else EXIT_FAILED
    status = 'hexagon' if section.certified else '%d contact points' % section.contact_count
    return reports.hexagon_entry(space, section), {}, status, code


def _verify(args):
    report = reports.load_json(args.path)
    if not isinstance(report, dict):
        raise InputError('Expected a report object', source=args.path, position='$')
    problems = reports.verify(report)
    result = dict(violations=problems, certificates=reports.count_certificates(report))
    if problems:
        return result, {}, problems[0], EXIT_FAILED
    return result, {}, 'verified', EXIT_OK


def _reproduce(args):
    outcome = cases.run_case(args.case, seed=args.seed, trials=args.trials, resolution=args.resolution,
                             restarts=args.restarts)
    code = EXIT_OK if outcome['passed'] else EXIT_FAILED
    return outcome, outcome['options'], 'passed' if outcome['passed'] else 'failed', code


COMMANDS = dict(pi2=_pi2, opnorm=_opnorm, john=_john, distance=_distance, check2sp=_check2sp, flats=_flats,
                hexagon=_hexagon, verify=_verify, reproduce=_reproduce)


def _inputs_digest(args):
    path = getattr(args, 'path', None)
    if path is None:
        return reports.digest(dict(case=args.case))
    return reports.digest(reports.load_json(path))


def run(argv=None, stdout=None, stderr=None):
    """Runs one subcommand and returns its exit code"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
    except UsageError as err:
        print(str(err), file=stderr)
        return EXIT_USAGE
    logging.basicConfig(stream=stderr, level=VERBOSITY[min(args.verbose, 2)],
                        format='%(levelname)s %(name)s: %(message)s')

    started = time.perf_counter()
    try:
        digest = _inputs_digest(args)
        result, budget, status, code = COMMANDS[args.command](args)
    except GapNotReached as err:
        print('%s: %s' % (args.command, err.message), file=stderr)
        return EXIT_FAILED
    except LabError as err:
        print('%s: %s' % (args.command, err), file=stderr)
        return EXIT_USAGE
    report = reports.Report(command=['numlab-summing'] + argv, inputs_digest=digest, results=result,
                            seeds=dict(seed=args.seed), budgets=budget, status=status,
                            wall_time=time.perf_counter() - started)
    print(report.dumps(), file=stdout)
    print('%s: %s' % (args.command, status), file=stderr)
    return code


def main():
    sys.exit(run())
