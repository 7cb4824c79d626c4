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
"""Utilities for testing Ruinband."""

import random
import warnings

import numpy as np
import pytest
import tensorflow as tf

from ruinband.ruin.python.ops import models

# Some configuration before starting the tests.

# we only need one core per worker.
try:
  tf.config.threading.set_intra_op_parallelism_threads(1)
  tf.config.threading.set_inter_op_parallelism_threads(1)
except RuntimeError:
  warnings.warn(
      "TensorFlow ({}) was initialized before the test threading setup; "
      "continuing with its defaults.".format(tf.__version__),
      UserWarning,
  )


@pytest.fixture(scope="function", autouse=True)
def set_seeds():
  random.seed(0)
  np.random.seed(0)
  tf.random.set_seed(0)


def pytest_configure(config):
  config.addinivalue_line(
      "markers", "slow: Monte Carlo test with many replicates; "
      "deselect with '-m \"not slow\"'.")


def random_model(family, rng, max_diffusion_ratio=0.9):
  """Draws a `ModelSpec` of `family` satisfying the net profit condition.

  Args:
    family: A `models.Family` or its string value.
    rng: A `np.random.Generator`.
    max_diffusion_ratio: Upper bound of `D / (c mu)` for `perturbed-exp`.

  Returns:
    A `models.ModelSpec`.
  """
  family = models.Family(family)
  loading = rng.uniform(1.2, 3.0)
  if family.exponential_claims:
    mu = rng.uniform(0.5, 2.0)
    lam = rng.uniform(0.5, 2.0)
    c = lam * mu * loading
    if family is models.Family.CLASSICAL_EXP:
      return models.ModelSpec.classical_exp(c, mu, lam)
    D = c * mu * rng.uniform(0.05, max_diffusion_ratio)
    return models.ModelSpec.perturbed_exp(c, mu, lam, D)
  a = rng.uniform(0.5, 2.0)
  b = rng.uniform(0.5, 2.0)
  return models.ModelSpec.gamma_sub(a / b * loading, a, b)


def central_difference(fn, x, rel_step=1e-6):
  """Central-difference gradient of a scalar or array valued `fn` at `x`.

  Returns an array whose last axis indexes the coordinates of `x`.
  """
  x = np.asarray(x, dtype=np.float64)
  columns = []
  for i in range(x.size):
    step = rel_step * max(abs(x[i]), 1e-3)
    up, down = x.copy(), x.copy()
    up[i] += step
    down[i] -= step
    columns.append((np.asarray(fn(up)) - np.asarray(fn(down))) / (2.0 * step))
  return np.stack(columns, axis=-1)


def assert_rel_close(actual, expected, rtol, atol=0.0):
  """`np.testing.assert_allclose` with the relative tolerance first."""
  np.testing.assert_allclose(np.asarray(actual),
                             np.asarray(expected),
                             rtol=rtol,
                             atol=atol)

