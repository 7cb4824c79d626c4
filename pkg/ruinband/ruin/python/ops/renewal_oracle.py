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
"""Numerical solution of the defective renewal equation for psi and grad psi.

`psi(u) = int_0^u psi(u - x) g(x) dx + h(u)` is marched on the grid
`u_n = n * step` with a product trapezoid rule: on each cell the unknown is
replaced by the mean of its end values and the kernel is integrated exactly,
`M_j = G(x_{j+1}) - G(x_j)` with `G = ladder_g_mass`. Exact cell masses keep
the rule second order for the log-singular gamma kernel as well.

The gradient equation
`grad psi = grad psi * g + [grad h + psi * grad g]`
is marched with the derivative of the same discrete weights, so its solution
is the exact theta-derivative of the discrete psi.
"""

import dataclasses

import numpy as np
import pandas as pd

from tensorflow.python.platform import tf_logging as logging

from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import models

DEFAULT_U_MAX = 30.0
DEFAULT_NODES = 4096
REFERENCE_NODES = 8192
MIN_NODES = 100


@dataclasses.dataclass(frozen=True)
class GridFunction:
  """Values of a function on `{0, step, 2 step, ...}`."""
  step: float
  values: np.ndarray

  @property
  def grid(self):
    return self.step * np.arange(self.values.shape[0])

  @property
  def u_max(self):
    return self.step * (self.values.shape[0] - 1)

  def at(self, u):
    """Linear interpolation at `u`, which must lie inside the grid."""
    u = np.asarray(u, dtype=np.float64)
    if np.any(u < 0.0) or np.any(u > self.u_max * (1.0 + 1e-12)):
      raise ValueError("u must lie in [0, {}], got {}".format(self.u_max, u))
    out = np.interp(u, self.grid, self.values)
    return out.item() if out.ndim == 0 else out

  def to_frame(self, name="value"):
    return pd.DataFrame({"u": self.grid, name: self.values})


def _node_count(u_max, step):
  if not (u_max > 0.0 and step > 0.0):
    raise ValueError("u_max and step must be positive, got {} and {}".format(
        u_max, step))
  if step > u_max / MIN_NODES:
    raise errors.StepTooCoarse(
        "step {} exceeds u_max / {} = {}".format(step, MIN_NODES,
                                                 u_max / MIN_NODES))
  return int(round(u_max / step))


def _check_npc(model):
  if not models.npc_check(model):
    raise errors.NpcViolated(
        "net profit condition fails: c = {} <= m = {}".format(
            model.c, models.levy_mean(model)))


def _weights(masses):
  """Trapezoid weights `w_0 = M_0/2`, `w_k = (M_{k-1} + M_k)/2`."""
  w = np.empty_like(masses)
  w[0] = 0.5 * masses[0]
  w[1:] = 0.5 * (masses[:-1] + masses[1:])
  return w


def _march(weights, masses, forcing, initial):
  """Solves `y_n = forcing_n + sum_{k=0}^{n} w^{(n)}_k y_{n-k}`.

  `w^{(n)}` equals `weights` except for its end weight `M_{n-1}/2`.
  """
  n_nodes = forcing.shape[0]
  y = np.empty(n_nodes)
  y[0] = initial
  diagonal = 1.0 - weights[0]
  for n in range(1, n_nodes):
    history = np.dot(weights[1:n + 1], y[n - 1::-1])
    history -= 0.5 * masses[n] * y[0]
    y[n] = (forcing[n] + history) / diagonal
  return y


def _setup(model, u_max, step):
  _check_npc(model)
  if step is None:
    step = u_max / DEFAULT_NODES
  n = _node_count(u_max, step)
  # One node past the end so that masses[n] closes the end weight.
  x = step * np.arange(n + 2)
  cumulative = np.asarray(models.ladder_g_mass(model, x))
  masses = np.diff(cumulative)
  return step, n, x[:n + 1], masses


def solve_psi(model: models.ModelSpec,
              u_max: float = DEFAULT_U_MAX,
              step: float = None) -> GridFunction:
  """Ruin probability on `[0, u_max]` from the renewal equation.

  Args:
    model: A `ModelSpec` satisfying the net profit condition.
    u_max: Right end of the grid.
    step: Grid step; `u_max / DEFAULT_NODES` when omitted.

  Returns:
    A `GridFunction` with `psi(0) = h(0)`.

  Raises:
    StepTooCoarse: If `step > u_max / MIN_NODES`.
    NpcViolated: If the net profit condition fails.
  """
  step, n, grid, masses = _setup(model, u_max, step)
  logging.vlog(1, "renewal march of %d nodes, step %g (%s)", n + 1, step,
               model.family.value)
  h = np.asarray(models.ladder_h(model, grid))
  psi = _march(_weights(masses), masses, h, h[0])
  return GridFunction(step=step, values=psi)


def solve_dot_psi(model: models.ModelSpec,
                  u_max: float = DEFAULT_U_MAX,
                  step: float = None,
                  psi: GridFunction = None):
  """Theta-gradient of the ruin probability on `[0, u_max]`.

  Args:
    model: A `ModelSpec` satisfying the net profit condition.
    u_max: Right end of the grid.
    step: Grid step; `u_max / DEFAULT_NODES` when omitted.
    psi: Optional `solve_psi` result on the same grid.

  Returns:
    A tuple of three `GridFunction`s, one per theta coordinate. The D entry
    is identically 0 for families with fixed `D = 0`.

  Raises:
    StepTooCoarse: If `step > u_max / MIN_NODES`.
    NpcViolated: If the net profit condition fails.
  """
  step, n, grid, masses = _setup(model, u_max, step)
  if psi is None:
    psi = solve_psi(model, u_max, step)
  elif psi.values.shape[0] != n + 1 or not np.isclose(psi.step, step):
    raise ValueError("psi was solved on a different grid")
  x = step * np.arange(n + 2)
  grad_masses = np.diff(models.grad_g_mass(model, x), axis=0)
  grad_h = models.grad_h(model, grid)
  weights = _weights(masses)
  out = []
  for i in range(3):
    if i == 2 and model.family.fixed_diffusion:
      out.append(GridFunction(step=step, values=np.zeros(n + 1)))
      continue
    d_masses = grad_masses[:, i]
    d_weights = _weights(d_masses)
    # grad h + sum_k dw_k psi_{n-k}, with the end weight dM_{n-1}/2.
    forcing = grad_h[:, i] + np.convolve(d_weights, psi.values)[:n + 1]
    forcing -= 0.5 * d_masses[:n + 1] * psi.values[0]
    forcing[0] = grad_h[0, i]
    values = _march(weights, masses, forcing, grad_h[0, i])
    out.append(GridFunction(step=step, values=values))
  return tuple(out)


def finite_diff_dot_psi(model: models.ModelSpec,
                        u: float,
                        rel_step: float = 1e-4,
                        u_max: float = None,
                        step: float = None) -> np.ndarray:
  """Central differences of `solve_psi` in each theta coordinate at `u`.

  Args:
    model: A `ModelSpec` satisfying the net profit condition.
    u: Initial capital.
    rel_step: Relative perturbation of each coordinate, in `[1e-6, 1e-2]`.
    u_max: Grid end, at least `u`; defaults to `max(u, 1)`.
    step: Grid step; `u_max / DEFAULT_NODES` when omitted.

  Returns:
    An array of shape `(3,)`; the D entry is 0 for fixed-D families.

  Raises:
    ValueError: If `rel_step` is out of range.
    NpcViolated: If a perturbed parameter violates the net profit condition.
  """
  if not 1e-6 <= rel_step <= 1e-2:
    raise ValueError("rel_step must lie in [1e-6, 1e-2], got {}".format(
        rel_step))
  if u_max is None:
    u_max = max(u, 1.0)
  if step is None:
    step = u_max / DEFAULT_NODES
  _check_npc(model)
  theta = model.theta().as_array()
  out = np.zeros(3)
  for i in range(3):
    if i == 2 and model.family.fixed_diffusion:
      continue
    delta = rel_step * theta[i]
    values = []
    for sign in (1.0, -1.0):
      shifted = theta.copy()
      shifted[i] += sign * delta
      try:
        perturbed = model.with_theta_values(shifted)
      except ValueError as e:
        raise errors.NpcViolated(
            "perturbed parameter leaves the model domain: {}".format(e))
      values.append(solve_psi(perturbed, u_max, step).at(u))
    out[i] = (values[0] - values[1]) / (2.0 * delta)
  if not np.all(np.isfinite(out)):
    raise errors.NpcViolated("non-finite difference quotient at {}".format(
        model.to_dict()))
  return out
