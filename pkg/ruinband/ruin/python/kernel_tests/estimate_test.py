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
"""Tests for the parameter estimators."""

import numpy as np
import pytest

from tensorflow.python.platform import test

from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import estimate
from ruinband.ruin.python.ops import models
from ruinband.ruin.python.ops import simulate
from ruinband.ruin.python.ops import special_ops

_CLASSICAL = models.Family.CLASSICAL_EXP
_PERTURBED = models.Family.PERTURBED_EXP
_GAMMA = models.Family.GAMMA_SUB


def _gamma_fisher_information(a, b, eps):
  """Per-unit-time Fisher information of the jumps above `eps`."""
  decay = np.exp(-b * eps)
  e1 = special_ops.exp_integral_e1(b * eps)
  return np.array([[e1 / a, -decay / b],
                   [-decay / b, a * decay * (1.0 + b * eps) / b**2]])


class ExponentialMleTest(test.TestCase):

  def test_arithmetic_example(self):
    obs = simulate.ObservationSet(_CLASSICAL, 2.0, 4.0, [1.0, 2.0],
                                  [1.0, 3.0])
    report = estimate.mle_exponential(obs)
    self.assertEqual(report.family, _CLASSICAL)
    self.assertAllClose(report.theta_hat.values, [2.0, 0.5, 0.0])
    self.assertAllClose(report.sigma_hat, np.diag([4.0, 0.5]))
    self.assertAllClose(report.sigma_star_hat, np.diag([4.0, 0.5, 0.0]))
    self.assertEqual(report.model(),
                     models.ModelSpec.classical_exp(2.0, 2.0, 0.5))

  def test_insufficient_data(self):
    for times, sizes in [([], []), ([1.0], [2.0])]:
      obs = simulate.ObservationSet(_CLASSICAL, 2.0, 4.0, times, sizes)
      with self.assertRaises(errors.InsufficientData):
        estimate.mle_exponential(obs)

  def test_within_plug_in_bands(self):
    model = models.ModelSpec.classical_exp(2.0, 1.0, 1.0)
    T = 5000.0
    report = estimate.mle_exponential(simulate.simulate_classical(model, T, 31))
    for value, truth, variance in zip(report.theta_hat.alpha, model.alpha,
                                      np.diag(report.sigma_hat)):
      self.assertLess(abs(value - truth), 3.0 * np.sqrt(variance / T))

  def test_invariant_to_claim_order(self):
    obs = simulate.simulate_classical(
        models.ModelSpec.classical_exp(2.0, 1.0, 1.0), 200.0, 32)
    shuffled = simulate.ObservationSet(
        obs.family, obs.premium, obs.horizon, obs.claim_times,
        np.random.default_rng(0).permutation(obs.claim_sizes))
    self.assertAllClose(
        estimate.mle_exponential(shuffled).theta_hat.values,
        estimate.mle_exponential(obs).theta_hat.values,
        rtol=1e-12)

  def test_rejects_gamma_data(self):
    obs = simulate.ObservationSet(_GAMMA,
                                  1.0,
                                  4.0, [1.0, 2.0], [1.0, 3.0],
                                  threshold=0.5)
    with self.assertRaises(TypeError):
      estimate.mle_exponential(obs)

  def test_to_dict(self):
    obs = simulate.ObservationSet(_CLASSICAL, 2.0, 4.0, [1.0, 2.0],
                                  [1.0, 3.0])
    out = estimate.mle_exponential(obs).to_dict()
    self.assertEqual(out["theta_hat"], {"mu": 2.0, "lambda": 0.5, "D": 0.0})
    self.assertEqual(out["flags"], [])
    self.assertEqual(out["sigma_star_hat"][2], [0.0, 0.0, 0.0])

  @pytest.mark.slow
  def test_plug_in_covariance_matches_spread(self):
    model = models.ModelSpec.classical_exp(2.0, 1.0, 1.0)
    T = 5000.0
    scaled = []
    for replicate in range(1000):
      obs = simulate.simulate_classical(model, T, 33, replicate)
      alpha = estimate.mle_exponential(obs).theta_hat.alpha
      scaled.append(np.sqrt(T) * (alpha - np.asarray(model.alpha)))
    empirical = np.cov(np.array(scaled), rowvar=False)
    self.assertAllClose(empirical, np.eye(2), rtol=0.15, atol=0.15)

  @pytest.mark.slow
  def test_root_t_consistency(self):
    model = models.ModelSpec.classical_exp(2.0, 1.0, 1.0)
    rms = []
    for T in [500.0, 8000.0]:
      errors_sq = []
      for replicate in range(200):
        obs = simulate.simulate_classical(model, T, 34, replicate)
        alpha = estimate.mle_exponential(obs).theta_hat.alpha
        errors_sq.append((alpha - np.asarray(model.alpha))**2)
      rms.append(np.sqrt(np.mean(errors_sq, axis=0)))
    ratio = rms[0] / rms[1]
    self.assertTrue(np.all(ratio > 4.0 / 1.5))
    self.assertTrue(np.all(ratio < 4.0 * 1.5))


class DiffusionTest(test.TestCase):

  def test_drift_bias_example(self):
    grid = 0.1 * np.arange(101)
    obs = simulate.ObservationSet(_PERTURBED,
                                  1.0,
                                  10.0, [], [],
                                  step=0.1,
                                  grid_obs=grid)
    self.assertAllClose(estimate.estimate_diffusion(obs), 0.05)

  def test_recovers_diffusion(self):
    model = models.ModelSpec.perturbed_exp(2.0, 1.0, 1.0, 0.5)
    obs = simulate.simulate_perturbed(model, 1000.0, 0.01, 35)
    self.assertAllClose(estimate.estimate_diffusion(obs), 0.5, atol=0.05)
    report = estimate.estimate_perturbed(obs)
    self.assertEqual(report.family, _PERTURBED)
    self.assertAllClose(report.theta_hat.D, 0.5, atol=0.05)
    self.assertAllEqual(report.sigma_star_hat[2], np.zeros(3))
    self.assertEqual(report.flags, ())

  def test_missing_grid(self):
    single = simulate.ObservationSet(_PERTURBED,
                                     1.0,
                                     0.0, [], [],
                                     step=0.1,
                                     grid_obs=[0.0])
    with self.assertRaises(errors.MissingGrid):
      estimate.estimate_diffusion(single)
    no_grid = simulate.ObservationSet(_PERTURBED, 1.0, 1.0, [0.5], [1.0])
    with self.assertRaises(errors.MissingGrid):
      estimate.estimate_diffusion(no_grid)

  def test_negative_estimate_is_clamped(self):
    obs = simulate.ObservationSet(_PERTURBED,
                                  1.0,
                                  1.0, [0.2, 0.6], [1.0, 1.0],
                                  step=0.5,
                                  grid_obs=[0.0, 0.0, 0.0])
    self.assertEqual(estimate.estimate_diffusion(obs), 0.0)
    report = estimate.estimate_perturbed(obs)
    self.assertEqual(report.family, _CLASSICAL)
    self.assertEqual(report.flags, (estimate.DIFFUSION_CLAMPED,))
    self.assertIs(estimate.estimate(obs).family, _CLASSICAL)


class GammaMleTest(test.TestCase):

  def test_recovers_parameters(self):
    model = models.ModelSpec.gamma_sub(2.0, 1.0, 1.0)
    obs = simulate.simulate_gamma_jumps(model, 40000.0, 0.5, 36)
    report = estimate.mle_gamma(obs)
    self.assertAllClose(report.theta_hat.alpha, [1.0, 1.0], rtol=0.05)
    self.assertLess(abs(report.diagnostics["residual"]), 1e-10)
    self.assertGreater(report.diagnostics["iterations"], 0)

  def test_population_equation_is_solved_by_truth(self):
    b, eps = 1.0, 0.5
    size = 1.0 / (b * special_ops.scaled_exp_integral_e1(b * eps))
    obs = simulate.ObservationSet(_GAMMA,
                                  2.0,
                                  10.0, [1.0, 2.0], [size, size],
                                  threshold=eps)
    report = estimate.mle_gamma(obs)
    self.assertAllClose(report.theta_hat.values[1], b, rtol=1e-10)

  def test_covariance_is_inverse_fisher_information(self):
    for a, b, eps in [(1.0, 1.0, 0.5), (2.0, 0.5, 0.1), (0.7, 3.0, 0.01)]:
      sigma = estimate.gamma_covariance(a, b, eps)
      self.assertAllClose(sigma, sigma.T)
      self.assertGreater(sigma[0, 1], 0.0)
      self.assertTrue(np.all(np.linalg.eigvalsh(sigma) > 0.0))
      self.assertAllClose(sigma,
                          np.linalg.inv(_gamma_fisher_information(a, b, eps)),
                          rtol=1e-10)

  def test_invariant_to_claim_order(self):
    model = models.ModelSpec.gamma_sub(2.0, 1.0, 1.0)
    obs = simulate.simulate_gamma_jumps(model, 500.0, 0.5, 37)
    shuffled = simulate.ObservationSet(
        obs.family,
        obs.premium,
        obs.horizon,
        obs.claim_times,
        np.random.default_rng(1).permutation(obs.claim_sizes),
        threshold=obs.threshold)
    self.assertAllClose(
        estimate.mle_gamma(shuffled).theta_hat.values,
        estimate.mle_gamma(obs).theta_hat.values,
        rtol=1e-10)

  def test_threshold_and_data_errors(self):
    zero_eps = simulate.ObservationSet(_GAMMA, 2.0, 10.0, [1.0, 2.0],
                                       [1.0, 1.5])
    with self.assertRaises(errors.EpsilonZero):
      estimate.mle_gamma(zero_eps)
    one_jump = simulate.ObservationSet(_GAMMA,
                                       2.0,
                                       10.0, [1.0], [1.0],
                                       threshold=0.5)
    with self.assertRaises(errors.InsufficientData):
      estimate.mle_gamma(one_jump)

  def test_dispatch(self):
    model = models.ModelSpec.gamma_sub(2.0, 1.0, 1.0)
    obs = simulate.simulate_gamma_jumps(model, 200.0, 0.5, 38)
    self.assertEqual(estimate.estimate(obs).family, _GAMMA)


if __name__ == "__main__":
  test.main()
