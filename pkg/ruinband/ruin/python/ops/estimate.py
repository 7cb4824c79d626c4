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
"""Parameter estimation from observation sets.

* exponential claims: maximum likelihood `mu_hat = mean size`,
  `lambda_hat = N_T / T`, with `Sigma = diag(mu^2, lambda)`;
* diffusion: realized quadratic variation of the grid minus the squared jumps,
  `D_hat = (sum |Delta R|^2 - sum U^2) / (2 T)`;
* gamma subordinator: maximum likelihood from the jumps above `eps`, whose
  covariance is the inverse Fisher information of that likelihood.

`Sigma*` extends `Sigma` with a zero row and column for `D`, whose estimator
converges faster than `sqrt(T)`.
"""

import dataclasses
from typing import Dict, Tuple

import numpy as np
from scipy import optimize

from tensorflow.python.platform import tf_logging as logging

from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import models
from ruinband.ruin.python.ops import simulate
from ruinband.ruin.python.ops import special_ops

GAMMA_B_LOWER = 1e-8
MAX_ITERATIONS = 200
DIFFUSION_CLAMPED = "diffusion_clamped"

_MAX_DOUBLINGS = 200
_MONOTONE_SAMPLES = 16


@dataclasses.dataclass(frozen=True)
class EstimateReport:
  """Estimated parameter with its plug-in asymptotic covariance.

  Attributes:
    theta_hat: Estimated `ThetaVector`.
    premium: Premium rate `c` carried over from the data.
    sigma_hat: `(2, 2)` covariance of `sqrt(T) (alpha_hat - alpha)`.
    sigma_star_hat: `(3, 3)` extension of `sigma_hat`, zero in the D slots.
    T: Observation horizon.
    diagnostics: Solver iterations and residuals.
    flags: Warnings raised during estimation, e.g. `DIFFUSION_CLAMPED`.
  """
  theta_hat: models.ThetaVector
  premium: float
  sigma_hat: np.ndarray
  sigma_star_hat: np.ndarray
  T: float
  diagnostics: Dict[str, float] = dataclasses.field(default_factory=dict)
  flags: Tuple[str, ...] = ()

  @property
  def family(self):
    return self.theta_hat.family

  def model(self):
    return models.ModelSpec.from_theta(self.theta_hat, self.premium)

  def to_dict(self):
    return {
        "family": self.family.value,
        "c": self.premium,
        "theta_hat": self.theta_hat.as_dict(),
        "sigma_hat": self.sigma_hat.tolist(),
        "sigma_star_hat": self.sigma_star_hat.tolist(),
        "T": self.T,
        "diagnostics": dict(self.diagnostics),
        "flags": list(self.flags),
    }


def extend_sigma(sigma_hat):
  """Block-diagonal `(Sigma, 0)` of size `(3, 3)`."""
  out = np.zeros((3, 3))
  out[:2, :2] = sigma_hat
  return out


def _report(family, values, obs, sigma_hat, diagnostics=None, flags=()):
  sigma_hat = np.asarray(sigma_hat, dtype=np.float64)
  return EstimateReport(theta_hat=models.ThetaVector(family, values),
                        premium=obs.premium,
                        sigma_hat=sigma_hat,
                        sigma_star_hat=extend_sigma(sigma_hat),
                        T=obs.horizon,
                        diagnostics=diagnostics or {},
                        flags=tuple(flags))


def mle_exponential(obs: simulate.ObservationSet) -> EstimateReport:
  """Maximum likelihood for compound Poisson claims with exponential sizes.

  Args:
    obs: Observations of an exponential-claims family.

  Returns:
    A `classical-exp` `EstimateReport` with `Sigma_hat = diag(mu^2, lambda)`.

  Raises:
    InsufficientData: With fewer than two claims.
  """
  if not obs.family.exponential_claims:
    raise TypeError("mle_exponential needs exponential claims, got {}".format(
        obs.family.value))
  if obs.n_claims < 2 or obs.horizon <= 0.0:
    raise errors.InsufficientData(
        "need at least 2 claims on a positive horizon, got {} on {}".format(
            obs.n_claims, obs.horizon))
  mu_hat = float(np.mean(obs.claim_sizes))
  lam_hat = obs.n_claims / obs.horizon
  return _report(models.Family.CLASSICAL_EXP, (mu_hat, lam_hat, 0.0), obs,
                 np.diag([mu_hat**2, lam_hat]))


def _raw_diffusion(obs):
  if obs.grid_obs is None or obs.grid_obs.shape[0] < 2:
    raise errors.MissingGrid(
        "diffusion estimation needs at least two grid observations")
  quadratic_variation = float(np.sum(np.diff(obs.grid_obs)**2))
  jumps = float(np.sum(obs.claim_sizes**2))
  return (quadratic_variation - jumps) / (2.0 * obs.horizon)


def estimate_diffusion(obs: simulate.ObservationSet) -> float:
  """Diffusion coefficient from the realized quadratic variation.

  The drift contributes `c^2 h / 2` of bias; a negative value is clamped to 0
  with a warning.

  Raises:
    MissingGrid: Without at least two grid observations.
  """
  raw = _raw_diffusion(obs)
  if raw < 0.0:
    logging.warning("negative diffusion estimate %g clamped to 0", raw)
    return 0.0
  return raw


def estimate_perturbed(obs: simulate.ObservationSet) -> EstimateReport:
  """Exponential-claims MLE plus `D_hat` for the perturbed model.

  When `D_hat` clamps to 0 the report falls back to `classical-exp` and
  carries the `DIFFUSION_CLAMPED` flag.
  """
  base = mle_exponential(obs)
  raw = _raw_diffusion(obs)
  mu_hat, lam_hat = base.theta_hat.alpha
  if raw <= 0.0:
    logging.warning("diffusion estimate %g <= 0; using classical-exp", raw)
    return dataclasses.replace(base, flags=(DIFFUSION_CLAMPED,))
  return _report(models.Family.PERTURBED_EXP, (mu_hat, lam_hat, raw), obs,
                 base.sigma_hat)


def gamma_covariance(a, b, eps):
  """Inverse Fisher information of the thresholded gamma likelihood.

  With `E = E1(b eps)` and
  `xi = b^-2 exp(-b eps) [(1 + b eps) E - exp(-b eps)]`:
  `sigma_aa = a exp(-b eps)(1 + b eps) / (b^2 xi)`,
  `sigma_bb = a E / (a^2 xi)`, `sigma_ab = exp(-b eps) / (b xi)`.
  """
  x = b * eps
  decay = np.exp(-x)
  e1 = special_ops.exp_integral_e1(x)
  xi = decay * ((1.0 + x) * e1 - decay) / b**2
  sigma_aa = a * decay * (1.0 + x) / (b**2 * xi)
  sigma_bb = a * e1 / (a**2 * xi)
  sigma_ab = decay / (b * xi)
  return np.array([[sigma_aa, sigma_ab], [sigma_ab, sigma_bb]])


def _b_equation(eps, ratio):
  # b exp(b eps) E1(b eps) rises from 0 to 1/eps.
  return lambda b: b * special_ops.scaled_exp_integral_e1(b * eps) - ratio


def mle_gamma(obs: simulate.ObservationSet) -> EstimateReport:
  """Maximum likelihood for the gamma subordinator from jumps above `eps`.

  `b_hat` solves `b e^{b eps} E1(b eps) = N / sum U` and
  `a_hat = (b_hat / T) e^{b_hat eps} sum U`.

  Raises:
    EpsilonZero: If the threshold is not positive.
    InsufficientData: With fewer than two jumps.
    NoRoot: If `N / sum U >= 1 / eps` or the bracket search fails.
  """
  if obs.family is not models.Family.GAMMA_SUB:
    raise TypeError("mle_gamma needs gamma-sub data, got {}".format(
        obs.family.value))
  eps = obs.threshold
  if not eps > 0.0:
    raise errors.EpsilonZero("gamma MLE needs eps > 0, got {}".format(eps))
  if obs.n_claims < 2 or obs.horizon <= 0.0:
    raise errors.InsufficientData(
        "need at least 2 jumps above eps on a positive horizon, got {}".format(
            obs.n_claims))
  total = float(np.sum(obs.claim_sizes))
  ratio = obs.n_claims / total
  if ratio * eps >= 1.0:
    raise errors.NoRoot(
        "N / sum U = {} is not below 1 / eps = {}".format(ratio, 1.0 / eps))
  fn = _b_equation(eps, ratio)
  lo, hi = GAMMA_B_LOWER, 1.0
  for _ in range(_MAX_DOUBLINGS):
    if fn(hi) > 0.0:
      break
    hi *= 2.0
  else:
    raise errors.NoRoot("no sign change for b up to {}".format(hi))
  if fn(lo) >= 0.0:
    raise errors.NoRoot("b equation is not negative at b = {}".format(lo))
  samples = fn(np.geomspace(lo, hi, _MONOTONE_SAMPLES))
  if np.any(np.diff(samples) <= 0.0):
    logging.warning("b equation is not increasing on [%g, %g]", lo, hi)

  b_hat, info = optimize.brentq(fn,
                                lo,
                                hi,
                                xtol=1e-300,
                                rtol=4.0 * np.finfo(np.float64).eps,
                                maxiter=MAX_ITERATIONS,
                                full_output=True,
                                disp=False)
  if not info.converged:
    raise errors.NoRoot("Brent's method stopped: {}".format(info.flag))
  residual = float(fn(b_hat))
  a_hat = b_hat / obs.horizon * np.exp(b_hat * eps) * total
  logging.vlog(1, "gamma MLE a=%g b=%g after %d iterations", a_hat, b_hat,
               info.iterations)
  return _report(models.Family.GAMMA_SUB, (a_hat, b_hat, 0.0), obs,
                 gamma_covariance(a_hat, b_hat, eps), {
                     "iterations": int(info.iterations),
                     "residual": residual,
                 })


def estimate(obs: simulate.ObservationSet) -> EstimateReport:
  """Runs the estimator matching `obs.family`."""
  if obs.family is models.Family.CLASSICAL_EXP:
    return mle_exponential(obs)
  if obs.family is models.Family.PERTURBED_EXP:
    return estimate_perturbed(obs)
  return mle_gamma(obs)
