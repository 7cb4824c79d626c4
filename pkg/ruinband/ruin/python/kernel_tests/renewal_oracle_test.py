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
"""Tests for the renewal-equation solver."""

import numpy as np

from tensorflow.python.platform import test

from ruinband.ruin.python.ops import cramer_asymptotics as cramer
from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import lundberg
from ruinband.ruin.python.ops import models
from ruinband.ruin.python.ops import renewal_oracle
from ruinband.utils import test_utils

_CLASSICAL = models.ModelSpec.classical_exp(2.0, 1.0, 1.0)


def _classical_psi(u):
  # lambda mu / c exp(-(1/mu - lambda/c) u) for c = 2, mu = lambda = 1
  return 0.5 * np.exp(-0.5 * np.asarray(u))


class SolvePsiTest(test.TestCase):

  def test_matches_closed_form(self):
    psi = renewal_oracle.solve_psi(_CLASSICAL, 10.0, 0.005)
    self.assertEqual(psi.values.shape, (2001,))
    self.assertAllClose(psi.values[0], 0.5)
    error = np.max(np.abs(psi.values - _classical_psi(psi.grid)))
    self.assertLess(error, 1e-4)

  def test_second_order_convergence(self):
    errors_by_step = []
    for step in [0.04, 0.02]:
      psi = renewal_oracle.solve_psi(_CLASSICAL, 10.0, step)
      errors_by_step.append(
          np.max(np.abs(psi.values - _classical_psi(psi.grid))))
    ratio = errors_by_step[0] / errors_by_step[1]
    self.assertBetween(ratio, 3.0, 5.0)

  def test_initial_value(self):
    rng = np.random.default_rng(30)
    for family in models.Family:
      model = test_utils.random_model(family, rng)
      psi = renewal_oracle.solve_psi(model, 5.0, 0.01)
      expected = 1.0 if family is models.Family.PERTURBED_EXP else (
          models.levy_mean(model) / model.c)
      self.assertAllClose(psi.values[0], expected)

  def test_monotone_probability(self):
    rng = np.random.default_rng(31)
    for i in range(12):
      model = test_utils.random_model(list(models.Family)[i % 3], rng)
      values = renewal_oracle.solve_psi(model, 10.0, 0.01).values
      self.assertTrue(np.all(values >= 0.0))
      self.assertTrue(np.all(values <= 1.0))
      self.assertTrue(np.all(np.diff(values) <= 1e-12))

  def test_tilted_solution_tends_to_cramer_constant(self):
    for model in [
        _CLASSICAL,
        models.ModelSpec.perturbed_exp(2.0, 1.0, 1.0, 0.5),
        models.ModelSpec.gamma_sub(1.0, 1.0, 2.0),
    ]:
      gamma = lundberg.solve_adjustment(model).gamma
      psi = renewal_oracle.solve_psi(model, 20.0)
      self.assertAllClose(np.exp(gamma * 20.0) * psi.at(20.0),
                          cramer.cramer_constant(model, gamma),
                          rtol=0.02)

  def test_grid_function(self):
    psi = renewal_oracle.solve_psi(_CLASSICAL, 10.0, 0.01)
    self.assertAllClose(psi.u_max, 10.0)
    self.assertAllClose(psi.at(0.005), 0.5 * (psi.values[0] + psi.values[1]))
    self.assertEqual(psi.at([1.0, 2.0]).shape, (2,))
    frame = psi.to_frame("psi")
    self.assertEqual(list(frame.columns), ["u", "psi"])
    self.assertLen(frame, 1001)
    with self.assertRaises(ValueError):
      psi.at(10.5)

  def test_step_too_coarse(self):
    with self.assertRaises(errors.StepTooCoarse):
      renewal_oracle.solve_psi(_CLASSICAL, 10.0, 0.2)

  def test_npc_violated(self):
    with self.assertRaises(errors.NpcViolated):
      renewal_oracle.solve_psi(models.ModelSpec.classical_exp(1.0, 1.0, 1.0))


class SolveDotPsiTest(test.TestCase):

  def test_matches_classical_closed_form(self):
    d_mu, d_lam, d_D = renewal_oracle.solve_dot_psi(_CLASSICAL, 10.0)
    u = np.array([1.0, 5.0, 10.0])
    psi = _classical_psi(u)
    self.assertAllClose(d_mu.at(u), psi * (1.0 + u), rtol=1e-3)
    self.assertAllClose(d_lam.at(u), psi * (1.0 + u / 2.0), rtol=1e-3)
    self.assertAllEqual(d_D.values, np.zeros_like(d_D.values))

  def test_matches_finite_differences(self):
    rng = np.random.default_rng(32)
    families = list(models.Family)
    for i in range(20):
      model = test_utils.random_model(families[i % 3], rng)
      u = rng.uniform(0.2, 9.5)
      dots = renewal_oracle.solve_dot_psi(model, 10.0, 0.01)
      numeric = renewal_oracle.finite_diff_dot_psi(model,
                                                   u,
                                                   rel_step=1e-4,
                                                   u_max=10.0,
                                                   step=0.01)
      analytic = np.array([d.at(u) for d in dots])
      test_utils.assert_rel_close(analytic, numeric, rtol=1e-3, atol=1e-12)

  def test_fixed_diffusion_component_is_zero(self):
    model = models.ModelSpec.gamma_sub(1.0, 1.0, 2.0)
    self.assertAllEqual(
        renewal_oracle.solve_dot_psi(model, 5.0, 0.01)[2].values, np.zeros(501))
    self.assertEqual(
        renewal_oracle.finite_diff_dot_psi(model, 1.0, u_max=5.0,
                                           step=0.01)[2], 0.0)

  def test_reuses_psi(self):
    psi = renewal_oracle.solve_psi(_CLASSICAL, 5.0, 0.01)
    with_psi = renewal_oracle.solve_dot_psi(_CLASSICAL, 5.0, 0.01, psi=psi)
    without = renewal_oracle.solve_dot_psi(_CLASSICAL, 5.0, 0.01)
    self.assertAllClose(with_psi[0].values, without[0].values)
    with self.assertRaises(ValueError):
      renewal_oracle.solve_dot_psi(_CLASSICAL, 5.0, 0.02, psi=psi)

  def test_approaches_first_order_asymptote(self):
    summary = cramer.summarize(_CLASSICAL)
    for u, component in [(30.0, 0), (60.0, 1)]:
      dots = renewal_oracle.solve_dot_psi(_CLASSICAL, u)
      asymptote = cramer.dot_psi_asymptotic(_CLASSICAL, u, summary)
      self.assertAllClose(dots[component].at(u) / asymptote[component],
                          1.0,
                          rtol=0.05)

  def test_finite_difference_arguments(self):
    with self.assertRaises(ValueError):
      renewal_oracle.finite_diff_dot_psi(_CLASSICAL, 1.0, rel_step=0.1)
    near_boundary = models.ModelSpec.classical_exp(1.001, 1.0, 1.0)
    with self.assertRaises(errors.NpcViolated):
      renewal_oracle.finite_diff_dot_psi(near_boundary, 1.0, rel_step=1e-2)


if __name__ == "__main__":
  test.main()
