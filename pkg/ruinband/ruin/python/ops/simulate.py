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
"""Synthetic observation sets for the surplus families.

Randomness comes from TensorFlow's counter-based stateless generators. Every
replicate owns the stream keyed by `(seed, replicate)`, and each stream is
split into fixed sub-streams for the claim count, arrival times, claim sizes
and diffusion noise, so results do not depend on execution order or on the
number of workers.
"""

import dataclasses
import json
import os
from typing import Optional

import numpy as np
import pandas as pd
import tensorflow as tf
from scipy import interpolate

from tensorflow.python.platform import tf_logging as logging

from ruinband import version
from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import models
from ruinband.ruin.python.ops import special_ops
from ruinband.utils.types import Seed

CLAIMS_FILE = "claims.csv"
GRID_FILE = "grid.csv"
META_FILE = "meta.json"
FLOAT_FORMAT = "%.17g"

_COUNT, _TIMES, _SIZES, _NOISE = range(4)
_INVERSE_CDF_NODES = 4000
_INVERSE_CDF_SPAN = 60.0


@dataclasses.dataclass(frozen=True)
class ObservationSet:
  """Simulated or ingested data of one surplus path.

  Attributes:
    family: Model family the data were generated from.
    premium: Premium rate `c` of the generating model.
    horizon: Observation horizon `T`.
    claim_times: Strictly increasing arrival times in `[0, T]`.
    claim_sizes: Claim sizes, all above `threshold`.
    step: Grid step `h`, or None without grid observations.
    grid_obs: Surplus values `R_{i h}`, `i = 0..floor(T/h)`, or None.
    threshold: Jump threshold `eps` (gamma family), 0 otherwise.
    seed: Master seed of the generating stream.
    initial_capital: `u_0 = R_0`.
  """
  family: models.Family
  premium: float
  horizon: float
  claim_times: np.ndarray
  claim_sizes: np.ndarray
  step: Optional[float] = None
  grid_obs: Optional[np.ndarray] = None
  threshold: float = 0.0
  seed: int = 0
  initial_capital: float = 0.0

  def __post_init__(self):
    object.__setattr__(self, "family", models.Family(self.family))
    times = np.asarray(self.claim_times, dtype=np.float64)
    sizes = np.asarray(self.claim_sizes, dtype=np.float64)
    object.__setattr__(self, "claim_times", times)
    object.__setattr__(self, "claim_sizes", sizes)
    if self.horizon < 0.0:
      raise ValueError("horizon must be >= 0, got {}".format(self.horizon))
    if times.shape != sizes.shape or times.ndim != 1:
      raise ValueError("claim times and sizes must be matching 1-D arrays")
    if times.size:
      if np.any(np.diff(times) <= 0.0):
        raise ValueError("claim times must be strictly increasing")
      if times[0] < 0.0 or times[-1] > self.horizon:
        raise ValueError("claim times must lie in [0, {}]".format(
            self.horizon))
      if np.any(sizes <= self.threshold):
        raise ValueError("claim sizes must exceed the threshold {}".format(
            self.threshold))
    if self.grid_obs is not None:
      grid = np.asarray(self.grid_obs, dtype=np.float64)
      object.__setattr__(self, "grid_obs", grid)
      if self.step is None or self.step <= 0.0:
        raise ValueError("grid observations need a positive step")
      expected = int(np.floor(self.horizon / self.step + 1e-9)) + 1
      if grid.shape != (expected,):
        raise ValueError("expected {} grid observations, got {}".format(
            expected, grid.shape))

  @property
  def n_claims(self):
    return int(self.claim_sizes.size)

  @property
  def claims(self):
    return list(zip(self.claim_times.tolist(), self.claim_sizes.tolist()))

  def aggregate_claims(self):
    """`S_T`, the sum of all observed claim sizes."""
    return float(np.sum(self.claim_sizes))

  def meta(self):
    return {
        "family": self.family.value,
        "premium": self.premium,
        "horizon": self.horizon,
        "step": self.step,
        "threshold": self.threshold,
        "seed": int(self.seed),
        "initial_capital": self.initial_capital,
        "spec_version": version.OUTPUT_SCHEMA_VERSION,
    }


def replicate_seed(seed: Seed, replicate: int = 0):
  """Stateless seed `[seed, replicate]` of one replicate stream."""
  seed = int(seed) % (1 << 63)
  return tf.constant([seed, int(replicate)], dtype=tf.int64)


def _substreams(seed, replicate):
  return tf.random.experimental.stateless_split(replicate_seed(seed, replicate),
                                                num=4)


def _arrivals(rate, T, streams):
  """Poisson(rate T) count and sorted uniform arrival times."""
  if T == 0.0 or rate * T == 0.0:
    return np.zeros(0), 0
  count = int(
      tf.random.stateless_poisson([], streams[_COUNT], rate * T,
                                  dtype=tf.int64).numpy())
  times = tf.random.stateless_uniform([count],
                                      streams[_TIMES],
                                      dtype=tf.float64).numpy()
  return np.sort(times * T), count


def _exponential_claims(model, T, streams):
  times, count = _arrivals(model.lam, T, streams)
  uniforms = tf.random.stateless_uniform([count],
                                         streams[_SIZES],
                                         dtype=tf.float64).numpy()
  sizes = -model.mu * np.log1p(-uniforms)
  return times, sizes


def simulate_classical(model: models.ModelSpec,
                       T: float,
                       seed: Seed,
                       replicate: int = 0,
                       initial_capital: float = 0.0) -> ObservationSet:
  """Compound Poisson claims with exponential sizes on `[0, T]`.

  Args:
    model: An exponential-claims `ModelSpec`.
    T: Horizon, `>= 0`; `T = 0` gives an empty set.
    seed: Master seed.
    replicate: Replicate index selecting the stream.
    initial_capital: `u_0` recorded with the data.

  Returns:
    An `ObservationSet` without grid observations.
  """
  if not model.family.exponential_claims:
    raise TypeError("simulate_classical needs exponential claims, got "
                    "{}".format(model.family.value))
  if T < 0.0:
    raise ValueError("T must be >= 0, got {}".format(T))
  times, sizes = _exponential_claims(model, T, _substreams(seed, replicate))
  return ObservationSet(family=model.family,
                        premium=model.c,
                        horizon=float(T),
                        claim_times=times,
                        claim_sizes=sizes,
                        seed=int(seed),
                        initial_capital=initial_capital)


def simulate_perturbed(model: models.ModelSpec,
                       T: float,
                       h: float,
                       seed: Seed,
                       replicate: int = 0,
                       initial_capital: float = 0.0) -> ObservationSet:
  """Claims plus exact grid observations of the perturbed surplus.

  `R_{ih} = u_0 + c i h + sqrt(2 D) W_{ih} - S_{ih}`; all claims are observed
  as well. A `classical-exp` model gives the classical path on the grid.

  Raises:
    ValueError: If `h <= 0` or `T / h` is not an integer.
  """
  if not model.family.exponential_claims:
    raise TypeError("simulate_perturbed needs exponential claims, got "
                    "{}".format(model.family.value))
  if not (T > 0.0 and h > 0.0):
    raise ValueError("T and h must be positive, got {} and {}".format(T, h))
  n = int(round(T / h))
  if abs(n * h - T) > 1e-9 * T:
    raise ValueError("T / h = {} is not an integer".format(T / h))
  streams = _substreams(seed, replicate)
  times, sizes = _exponential_claims(model, T, streams)
  grid_t = h * np.arange(n + 1)
  noise = np.zeros(n + 1)
  if model.D > 0.0:
    increments = tf.random.stateless_normal([n],
                                            streams[_NOISE],
                                            stddev=np.sqrt(2.0 * model.D * h),
                                            dtype=tf.float64).numpy()
    noise[1:] = np.cumsum(increments)
  cumulative = np.concatenate([[0.0], np.cumsum(sizes)])
  claims_so_far = cumulative[np.searchsorted(times, grid_t, side="right")]
  surplus = initial_capital + model.c * grid_t + noise - claims_so_far
  return ObservationSet(family=model.family,
                        premium=model.c,
                        horizon=float(T),
                        claim_times=times,
                        claim_sizes=sizes,
                        step=float(h),
                        grid_obs=surplus,
                        seed=int(seed),
                        initial_capital=initial_capital)


class TruncatedGammaJumpSampler(object):
  """Inverse-CDF sampler of `z^-1 exp(-b z) / E1(b eps)` on `(eps, inf)`.

  Works in `t = b z`. The survival function is `E1(t) / E1(x0)`, `x0 = b eps`,
  so `y = -log S(t)` is increasing; a monotone PCHIP spline of `t(y)` on a
  geometric grid is inverted at `y = -log(1 - U)`.
  """

  def __init__(self, b, eps):
    if not eps > 0.0:
      raise errors.EpsilonZero(
          "thresholded gamma jumps need eps > 0, got {}".format(eps))
    self.b = float(b)
    self.eps = float(eps)
    x0 = self.b * self.eps
    t = x0 * np.geomspace(1.0, (x0 + _INVERSE_CDF_SPAN) / x0,
                          _INVERSE_CDF_NODES)
    log_s = np.log(special_ops.scaled_exp_integral_e1(t))
    y = -(log_s - t) + (log_s[0] - x0)
    y[0] = 0.0
    self._t_end, self._y_end = t[-1], y[-1]
    self._slope_end = (t[-1] - t[-2]) / (y[-1] - y[-2])
    self._spline = interpolate.PchipInterpolator(y, t, extrapolate=False)

  def survival(self, z):
    z = np.asarray(z, dtype=np.float64)
    return (special_ops.exp_integral_e1(self.b * z) /
            special_ops.exp_integral_e1(self.b * self.eps))

  def sample(self, uniforms):
    y = -np.log1p(-np.asarray(uniforms, dtype=np.float64))
    inside = y <= self._y_end
    t = np.empty_like(y)
    t[inside] = self._spline(y[inside])
    t[~inside] = self._t_end + (y[~inside] - self._y_end) * self._slope_end
    z = t / self.b
    return np.maximum(z, np.nextafter(self.eps, np.inf))


def simulate_gamma_jumps(model: models.ModelSpec,
                         T: float,
                         eps: float,
                         seed: Seed,
                         replicate: int = 0) -> ObservationSet:
  """Jumps above `eps` of the gamma subordinator on `[0, T]`.

  The count is Poisson with mean `T a E1(b eps)`; sizes come from
  `TruncatedGammaJumpSampler`.

  Raises:
    EpsilonZero: If `eps <= 0`.
  """
  if model.family is not models.Family.GAMMA_SUB:
    raise TypeError("simulate_gamma_jumps needs gamma-sub, got {}".format(
        model.family.value))
  if T < 0.0:
    raise ValueError("T must be >= 0, got {}".format(T))
  sampler = TruncatedGammaJumpSampler(model.b, eps)
  rate = model.a * special_ops.exp_integral_e1(model.b * eps)
  streams = _substreams(seed, replicate)
  times, count = _arrivals(rate, T, streams)
  uniforms = tf.random.stateless_uniform([count],
                                         streams[_SIZES],
                                         dtype=tf.float64).numpy()
  if count == 0:
    logging.warning("no jumps above eps = %g on [0, %g]", eps, T)
  return ObservationSet(family=model.family,
                        premium=model.c,
                        horizon=float(T),
                        claim_times=times,
                        claim_sizes=sampler.sample(uniforms),
                        threshold=float(eps),
                        seed=int(seed))


def simulate(model: models.ModelSpec,
             T: float,
             seed: Seed,
             h: float = None,
             eps: float = None,
             replicate: int = 0) -> ObservationSet:
  """Dispatches to the simulator of `model.family`."""
  if model.family is models.Family.CLASSICAL_EXP:
    return simulate_classical(model, T, seed, replicate)
  if model.family is models.Family.PERTURBED_EXP:
    if h is None:
      raise ValueError("perturbed-exp simulation needs a grid step h")
    return simulate_perturbed(model, T, h, seed, replicate)
  if eps is None:
    raise errors.EpsilonZero("gamma-sub simulation needs a threshold eps")
  return simulate_gamma_jumps(model, T, eps, seed, replicate)


def write_observations(obs: ObservationSet, directory: str):
  """Writes `claims.csv`, `grid.csv` (when present) and `meta.json`."""
  os.makedirs(directory, exist_ok=True)
  claims = pd.DataFrame({
      "index": np.arange(obs.n_claims),
      "time": obs.claim_times,
      "size": obs.claim_sizes,
  })
  claims.to_csv(os.path.join(directory, CLAIMS_FILE),
                index=False,
                float_format=FLOAT_FORMAT,
                encoding="utf-8")
  grid_path = os.path.join(directory, GRID_FILE)
  if obs.grid_obs is not None:
    n = obs.grid_obs.shape[0]
    grid = pd.DataFrame({
        "i": np.arange(n),
        "t": obs.step * np.arange(n),
        "R": obs.grid_obs,
    })
    grid.to_csv(grid_path,
                index=False,
                float_format=FLOAT_FORMAT,
                encoding="utf-8")
  elif os.path.exists(grid_path):
    os.remove(grid_path)
  with open(os.path.join(directory, META_FILE), "w", encoding="utf-8") as f:
    f.write(json.dumps(obs.meta(), indent=2, sort_keys=True,
                       ensure_ascii=True))
    f.write("\n")


def read_observations(directory: str) -> ObservationSet:
  """Reads a directory written by `write_observations`.

  Raises:
    FileNotFoundError: If `claims.csv` or `meta.json` is missing.
    ValueError: On malformed columns.
  """
  with open(os.path.join(directory, META_FILE), encoding="utf-8") as f:
    meta = json.load(f)
  claims = pd.read_csv(os.path.join(directory, CLAIMS_FILE),
                       dtype={"index": np.int64, "time": np.float64,
                              "size": np.float64})
  missing = {"index", "time", "size"} - set(claims.columns)
  if missing:
    raise ValueError("{} lacks columns {}".format(CLAIMS_FILE,
                                                  sorted(missing)))
  claims = claims.sort_values("index")
  grid_obs = None
  grid_path = os.path.join(directory, GRID_FILE)
  if os.path.exists(grid_path):
    grid = pd.read_csv(grid_path).sort_values("i")
    if not {"i", "t", "R"} <= set(grid.columns):
      raise ValueError("{} needs columns i, t, R".format(GRID_FILE))
    grid_obs = grid["R"].to_numpy(dtype=np.float64)
  return ObservationSet(family=meta["family"],
                        premium=float(meta["premium"]),
                        horizon=float(meta["horizon"]),
                        claim_times=claims["time"].to_numpy(),
                        claim_sizes=claims["size"].to_numpy(),
                        step=meta.get("step"),
                        grid_obs=grid_obs,
                        threshold=float(meta.get("threshold", 0.0)),
                        seed=int(meta.get("seed", 0)),
                        initial_capital=float(meta.get("initial_capital",
                                                       0.0)))
