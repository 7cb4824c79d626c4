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
"""Adjustment coefficient of the modified Lundberg equation."""

import dataclasses
from typing import Tuple

import numpy as np
from scipy import optimize

from tensorflow.python.platform import tf_logging as logging

from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import models

BRACKET_CLEARANCE = 1e-9
BRACKET_LOWER = 1e-12
MAX_ITERATIONS = 200
RESIDUAL_TOLERANCE = 1e-12
DENOMINATOR_FLOOR = 1e-10

_MAX_EXPANSIONS = 60
_MAX_POLISH_STEPS = 4


@dataclasses.dataclass(frozen=True)
class LundbergSolution:
  """Positive root `gamma` of `kappa` with its solver diagnostics."""
  gamma: float
  residual: float
  bracket: Tuple[float, float]
  iterations: int

  def to_dict(self):
    return {
        "gamma": self.gamma,
        "residual": self.residual,
        "bracket": list(self.bracket),
        "iterations": self.iterations,
    }


def residual_tolerance(model, gamma):
  return RESIDUAL_TOLERANCE * max(1.0, model.c * gamma)


def _expand_bracket(model, upper):
  """Walks `hi` from `upper/2` towards `upper` until `kappa(hi) > 0`."""
  hi = 0.5 * upper
  for _ in range(_MAX_EXPANSIONS):
    if models.kappa(model, hi) > 0.0:
      return hi
    hi = hi + 0.5 * (upper - hi)
  if models.kappa(model, upper) > 0.0:
    return upper
  raise errors.NoRoot(
      "kappa stays non-positive up to {:.17g} for {}".format(
          upper, model.to_dict()))


def solve_adjustment(model: models.ModelSpec) -> LundbergSolution:
  """Solves `kappa(r) = 0` for the adjustment coefficient.

  The root is searched in `(0, U)` with `U = min(c/D, pole)` shrunk by
  `BRACKET_CLEARANCE`, bracketed from below at `BRACKET_LOWER` and refined
  with Brent's method.

  Args:
    model: A `ModelSpec` satisfying the net profit condition.

  Returns:
    A `LundbergSolution`.

  Raises:
    NpcViolated: If `c <= m_alpha`.
    NoRoot: If no sign change is found below `U`, or the refined root misses
      the residual tolerance.
  """
  if not models.npc_check(model):
    raise errors.NpcViolated(
        "net profit condition fails: c = {} <= m = {}".format(
            model.c, models.levy_mean(model)))
  upper = models.lundberg_upper_bound(model) * (1.0 - BRACKET_CLEARANCE)
  lo = BRACKET_LOWER
  if models.kappa(model, lo) >= 0.0:
    raise errors.NoRoot("kappa is not negative near 0 for {}".format(
        model.to_dict()))
  hi = _expand_bracket(model, upper)

  gamma, info = optimize.brentq(lambda r: models.kappa(model, r),
                                lo,
                                hi,
                                xtol=1e-300,
                                rtol=4.0 * np.finfo(np.float64).eps,
                                maxiter=MAX_ITERATIONS,
                                full_output=True,
                                disp=False)
  if not info.converged:
    raise errors.NoRoot("Brent's method stopped: {}".format(info.flag))
  iterations = info.iterations

  residual = models.kappa(model, gamma)
  tol = residual_tolerance(model, gamma)
  # Newton polish inside the bracket for roots next to a steep pole.
  for _ in range(_MAX_POLISH_STEPS):
    if abs(residual) <= tol:
      break
    step = residual / models.kappa_prime_r(model, gamma)
    candidate = min(max(gamma - step, lo), hi)
    gamma = candidate
    residual = models.kappa(model, gamma)
    iterations += 1
  if abs(residual) > tol:
    raise errors.NoRoot("residual {:.3e} above tolerance {:.3e}".format(
        residual, tol))

  logging.vlog(1, "adjustment coefficient %.17g after %d iterations (%s)",
               gamma, iterations, model.family.value)
  return LundbergSolution(gamma=float(gamma),
                          residual=float(residual),
                          bracket=(lo, float(hi)),
                          iterations=int(iterations))


def gamma_hat_variance(model: models.ModelSpec, gamma: float,
                       sigma_alpha) -> float:
  """Asymptotic variance of `sqrt(T) (gamma_hat - gamma)`.

  Args:
    model: The model `gamma` was solved for.
    gamma: Adjustment coefficient of `model`.
    sigma_alpha: `(2, 2)` asymptotic covariance of `sqrt(T) (alpha_hat - alpha)`.

  Returns:
    `grad_alpha kappa(gamma)^T sigma_alpha grad_alpha kappa(gamma) /
    kappa'(gamma)^2`.

  Raises:
    DegenerateDenominator: If `|kappa'(gamma)| < DENOMINATOR_FLOOR`.
  """
  denominator = models.kappa_prime_r(model, gamma)
  if abs(denominator) < DENOMINATOR_FLOOR:
    raise errors.DegenerateDenominator(
        "kappa'(gamma) = {:.3e} vanishes".format(denominator))
  grad = models.grad_alpha_kappa(model, gamma)
  sigma_alpha = np.asarray(sigma_alpha, dtype=np.float64)
  return float(grad @ sigma_alpha @ grad) / denominator**2
