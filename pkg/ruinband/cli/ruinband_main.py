# Copyright 2026 The Ruinband Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================

# lint-as: python3
"""`ruinband` command line.

  ruinband <command> [flags]

Commands:
  simulate   simulate an observation set into --out (claims.csv, grid.csv,
             meta.json)
  estimate   estimate theta from --data_dir, JSON report
  lundberg   adjustment coefficient of the --family model, JSON; with
             --data_dir also the interval for the estimated coefficient
  approx     CSV of u, psi_cramer, psi_oracle and the gradient columns
  ci         confidence interval for psi(--u) from --data_dir, JSON
  coverage   Monte Carlo coverage of the interval, JSON or CSV row

Exit codes: 0 success, 2 invalid flags, configuration or input files,
3 numerical failure.
"""

import json
import os
import sys

import pandas as pd

from absl import app
from absl import flags
from absl import logging

from ruinband import version
from ruinband.cli import run_config
from ruinband.ruin.python.ops import confidence
from ruinband.ruin.python.ops import cramer_asymptotics
from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import estimate
from ruinband.ruin.python.ops import lundberg
from ruinband.ruin.python.ops import models
from ruinband.ruin.python.ops import renewal_oracle
from ruinband.ruin.python.ops import simulate

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

flags.DEFINE_enum('family', None, [f.value for f in models.Family],
                  'Model family.')
flags.DEFINE_float('c', None, 'Premium rate [currency/time].')
flags.DEFINE_float('mu', None, 'Mean claim size [currency].')
flags.DEFINE_float('lambda', None, 'Claim intensity [1/time].')
flags.DEFINE_float('D', None,
                   'Diffusion coefficient sigma^2/2 [currency^2/time].')
flags.DEFINE_float('a', None, 'Gamma Levy density scale a [1/time].')
flags.DEFINE_float('b', None, 'Gamma Levy density rate b [1/currency].')
flags.DEFINE_float('T', None, 'Observation horizon [time].')
flags.DEFINE_float('h', None, 'Grid step of surplus observations [time].')
flags.DEFINE_float('eps', None, 'Jump threshold [currency].')
flags.DEFINE_float('u', None, 'Initial capital for ci/coverage [currency].')
flags.DEFINE_float('u_max', renewal_oracle.DEFAULT_U_MAX,
                   'Right end of the oracle grid [currency].')
flags.DEFINE_float('step', None,
                   'Oracle grid step [currency]; default u_max/4096.')
flags.DEFINE_integer('stride', 32, 'Keep every stride-th grid node in approx '
                     '[nodes].')
flags.DEFINE_float('level', 0.95, 'Nominal confidence level in (0, 1).')
flags.DEFINE_enum('variant', 'J', list(confidence.VARIANTS),
                  'Interval center: I (renewal oracle) or J (Cramer).')
flags.DEFINE_enum('studentize', 'asymptotic',
                  list(confidence.STUDENTIZATIONS),
                  'Interval scale: asymptotic sigma* or the oracle gradient.')
flags.DEFINE_integer('replicates', 1000, 'Monte Carlo replicates.')
flags.DEFINE_integer('seed', None, 'Master seed; falls back to $RUINBAND_SEED, '
                     'then 0.')
flags.DEFINE_integer('workers', None,
                     'Worker processes; default: available CPUs.')
flags.DEFINE_string('data_dir', None, 'Observation set directory [path].')
flags.DEFINE_string('out', None, 'Output file or directory [path]; '
                    'stdout when omitted.')
flags.DEFINE_enum('format', 'json', ['json', 'csv'],
                  'Coverage output format.')
flags.DEFINE_string('config', None, 'Flat key = value file; command-line '
                    'flags take precedence [path].')

FLAGS = flags.FLAGS

_CONFIG_KEYS = ('family', 'c', 'mu', 'lambda', 'D', 'a', 'b', 'T', 'h', 'eps',
                'u', 'u_max', 'step', 'stride', 'level', 'variant',
                'studentize', 'replicates', 'seed', 'workers', 'data_dir',
                'out', 'format')


def _dumps(payload):
  payload = dict(payload)
  payload['spec_version'] = version.OUTPUT_SCHEMA_VERSION
  return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True) + '\n'


def _emit(text, out):
  if not out or out == '-':
    sys.stdout.write(text)
    return
  parent = os.path.dirname(os.path.abspath(out))
  os.makedirs(parent, exist_ok=True)
  with open(out, 'w', encoding='utf-8') as f:
    f.write(text)


def cmd_simulate(config):
  """Simulates an observation set into `config.out`."""
  model = config.model()
  obs = simulate.simulate(model,
                          config.T,
                          config.seed,
                          h=config.h,
                          eps=config.eps)
  simulate.write_observations(obs, config.out)
  logging.info('wrote %d claims to %s', obs.n_claims, config.out)


def cmd_estimate(config):
  obs = simulate.read_observations(config.data_dir)
  report = estimate.estimate(obs)
  _emit(_dumps(report.to_dict()), config.out)


def cmd_lundberg(config):
  """Adjustment coefficient, plus its interval when data are given."""
  model = config.model()
  payload = {'model': model.to_dict()}
  payload.update(lundberg.solve_adjustment(model).to_dict())
  if config.data_dir:
    est = estimate.estimate(simulate.read_observations(config.data_dir))
    payload['estimated'] = confidence.gamma_interval(est,
                                                     config.level).to_dict()
  _emit(_dumps(payload), config.out)


def cmd_approx(config):
  """CSV of the Cramer approximation against the renewal oracle."""
  model = config.model()
  summary = cramer_asymptotics.summarize(model)
  psi = renewal_oracle.solve_psi(model, config.u_max, config.step)
  dot = renewal_oracle.solve_dot_psi(model, config.u_max, config.step, psi)
  u = psi.grid
  asymptote = cramer_asymptotics.dot_psi_asymptotic(model, u, summary)
  frame = pd.DataFrame({
      'u': u,
      'psi_cramer': cramer_asymptotics.psi_cramer(summary.gamma, summary.C, u),
      'psi_oracle': psi.values,
  })
  for i, name in enumerate(model.family.param_names):
    frame['dot_psi_asymptotic_' + name] = asymptote[:, i]
    frame['dot_psi_oracle_' + name] = dot[i].values
  frame = frame.iloc[::config.stride]
  _emit(frame.to_csv(index=False, float_format='%.17g'), config.out)


def cmd_ci(config):
  est = estimate.estimate(simulate.read_observations(config.data_dir))
  report = confidence.build_interval(est, config.u, config.level,
                                     config.variant, config.studentize)
  _emit(_dumps(report.to_dict()), config.out)


def cmd_coverage(config):
  """Coverage experiment at the flag-given true model."""
  result = confidence.coverage_experiment(config.model(),
                                          config.T,
                                          config.u,
                                          config.level,
                                          config.replicates,
                                          config.seed,
                                          variant=config.variant,
                                          studentize=config.studentize,
                                          h=config.h,
                                          eps=config.eps,
                                          workers=config.workers)
  if config.format == 'csv':
    _emit(result.to_csv_row(header=True), config.out)
  else:
    _emit(_dumps(result.to_dict()), config.out)


_COMMANDS = {
    'simulate': cmd_simulate,
    'estimate': cmd_estimate,
    'lundberg': cmd_lundberg,
    'approx': cmd_approx,
    'ci': cmd_ci,
    'coverage': cmd_coverage,
}


def main(argv):
  if len(argv) != 2:
    logging.error('expected exactly one command out of %s, got %s',
                  ', '.join(run_config.COMMANDS), argv[1:])
    return EXIT_INVALID
  try:
    if FLAGS.config:
      run_config.apply_config_file(FLAGS.config, FLAGS, _CONFIG_KEYS)
    config = run_config.RunConfig.from_flags(argv[1], FLAGS).validate()
    _COMMANDS[config.command](config)
  except errors.RuinError as e:
    logging.error('%s: %s', type(e).__name__, e)
    return EXIT_NUMERICAL if e.numerical else EXIT_INVALID
  except (ValueError, TypeError, OSError) as e:
    logging.error('%s', e)
    return EXIT_INVALID
  return EXIT_OK


def parse_flags(argv):
  """absl flag parser exiting with code 2 on bad flags."""
  try:
    return FLAGS(argv)
  except flags.Error as e:
    sys.stderr.write('FATAL Flags parsing error: {}\n'.format(e))
    sys.stderr.write('Pass --helpfull to see help on flags.\n')
    sys.exit(EXIT_INVALID)


def execute(argv):
  """Parses `argv` from scratch and runs the command; returns the exit code."""
  FLAGS.unparse_flags()
  try:
    remaining = FLAGS(argv)
  except flags.Error as e:
    logging.error('Flags parsing error: %s', e)
    return EXIT_INVALID
  return main(remaining)


def run():
  app.run(main, flags_parser=parse_flags)


if __name__ == '__main__':
  run()
