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
"""Delta-method confidence intervals for the ruin probability.

Two centers are offered: variant `I` uses the renewal-equation value
`psi_{theta_hat}(u)` and variant `J` the Cramer approximation
`C_{theta_hat} exp(-gamma_{theta_hat} u)`. The half width is
`z_{alpha/2} sigma / sqrt(T)` where `sigma` is either the asymptotic
`sigma*(theta_hat, u)` (`studentize="asymptotic"`) or the exact delta-method
scale `sqrt(grad psi^T Sigma* grad psi)` with `grad psi` from the renewal
oracle (`studentize="oracle"`).

`coverage_experiment` checks the intervals by Monte Carlo: replicates are
split across processes, every replicate draws from its own stateless stream
and the hits are reduced in replicate order.
"""

import concurrent.futures
import dataclasses
import io
import multiprocessing
from typing import Dict, Optional

import numpy as np
import pandas as pd
from scipy import stats

from tensorflow.python.platform import tf_logging as logging

from ruinband.ruin.python.ops import cramer_asymptotics
from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import estimate
from ruinband.ruin.python.ops import lundberg
from ruinband.ruin.python.ops import models
from ruinband.ruin.python.ops import renewal_oracle
from ruinband.ruin.python.ops import simulate

VARIANTS = ("I", "J")
STUDENTIZATIONS = ("asymptotic", "oracle")
MIN_REPLICATES = 100
LONG_RANGE_WARNING = 0.5


@dataclasses.dataclass(frozen=True)
class IntervalReport:
  """A confidence interval for `psi(u)` with the estimates behind it."""
  variant: str
  studentize: str
  u: float
  level: float
  z: float
  center: float
  scale: float
  half_width: float
  lo: float
  hi: float
  lo_clipped: float
  hi_clipped: float
  estimate_report: estimate.EstimateReport
  adjustment: lundberg.LundbergSolution
  cramer: cramer_asymptotics.CramerSummary

  def contains(self, value):
    return self.lo <= value <= self.hi

  def to_dict(self):
    return {
        "variant": self.variant,
        "studentize": self.studentize,
        "u": self.u,
        "level": self.level,
        "z": self.z,
        "center": self.center,
        "sigma": self.scale,
        "half_width": self.half_width,
        "lo": self.lo,
        "hi": self.hi,
        "lo_clipped": self.lo_clipped,
        "hi_clipped": self.hi_clipped,
        "estimate": self.estimate_report.to_dict(),
        "lundberg": self.adjustment.to_dict(),
        "cramer": self.cramer.to_dict(),
    }


@dataclasses.dataclass(frozen=True)
class AdjustmentInterval:
  """Confidence interval for the adjustment coefficient."""
  gamma: float
  variance: float
  level: float
  half_width: float

  @property
  def lo(self):
    return self.gamma - self.half_width

  @property
  def hi(self):
    return self.gamma + self.half_width

  def to_dict(self):
    return {
        "gamma": self.gamma,
        "asymptotic_variance": self.variance,
        "level": self.level,
        "half_width": self.half_width,
        "lo": self.lo,
        "hi": self.hi,
    }


@dataclasses.dataclass(frozen=True)
class CoverageResult:
  """Outcome of a Monte Carlo coverage experiment.

  `coverage = hits / (replicates - dropped)`; dropped replicates are those
  whose estimation or interval raised a `RuinError`.
  """
  replicates: int
  hits: int
  dropped: int
  coverage: float
  nominal: float
  config: Dict[str, object]
  failures: Dict[str, int] = dataclasses.field(default_factory=dict)

  def to_dict(self):
    return {
        "replicates": self.replicates,
        "hits": self.hits,
        "dropped": self.dropped,
        "coverage": self.coverage,
        "nominal": self.nominal,
        "config": dict(self.config),
        "failures": dict(self.failures),
    }

  def to_csv_row(self, header=False):
    """One CSV line with the counts and the flattened config."""
    row = {
        "replicates": self.replicates,
        "hits": self.hits,
        "dropped": self.dropped,
        "coverage": self.coverage,
        "nominal": self.nominal,
    }
    for key, value in self.config.items():
      if isinstance(value, dict):
        for inner, v in value.items():
          row["{}_{}".format(key, inner)] = v
      else:
        row[key] = value
    buf = io.StringIO()
    pd.DataFrame([row]).to_csv(buf,
                               index=False,
                               header=header,
                               float_format="%.17g")
    return buf.getvalue()


def normal_quantile(level):
  """Two-sided standard normal quantile `z_{alpha/2}` for `level = 1 - alpha`."""
  if not 0.0 < level < 1.0:
    raise ValueError("level must lie in (0, 1), got {}".format(level))
  return float(stats.norm.isf(0.5 * (1.0 - level)))


def _oracle_grid(u, nodes):
  return u, u / nodes


def _validate(u, variant, studentize):
  if not u > 0.0:
    raise ValueError("u must be positive, got {}".format(u))
  if variant not in VARIANTS:
    raise ValueError("variant must be one of {}, got {}".format(
        VARIANTS, variant))
  if studentize not in STUDENTIZATIONS:
    raise ValueError("studentize must be one of {}, got {}".format(
        STUDENTIZATIONS, studentize))


def build_interval(est: estimate.EstimateReport,
                   u: float,
                   level: float,
                   variant: str = "J",
                   studentize: str = "asymptotic",
                   nodes: int = renewal_oracle.DEFAULT_NODES) -> IntervalReport:
  """Delta-method interval for `psi(u)` at the estimated parameter.

  Args:
    est: An `EstimateReport`.
    u: Initial capital, positive.
    level: Nominal level in `(0, 1)`.
    variant: `"I"` (renewal-oracle center) or `"J"` (Cramer center).
    studentize: `"asymptotic"` for `sigma*` or `"oracle"` for the exact
      delta-method scale.
    nodes: Oracle grid size on `[0, u]`.

  Returns:
    An `IntervalReport`.

  Raises:
    NpcViolatedAtEstimate: If the estimated model violates the net profit
      condition.
  """
  _validate(u, variant, studentize)
  z = normal_quantile(level)
  model = est.model()
  if not models.npc_check(model):
    raise errors.NpcViolatedAtEstimate(
        "estimated model violates the net profit condition: c = {} <= "
        "m = {}".format(model.c, models.levy_mean(model)))
  if u / np.sqrt(est.T) > LONG_RANGE_WARNING:
    logging.warning("u / sqrt(T) = %g exceeds %g; asymptotics may not apply",
                    u / np.sqrt(est.T), LONG_RANGE_WARNING)
  solution = lundberg.solve_adjustment(model)
  summary = cramer_asymptotics.summarize(model, solution.gamma)

  u_max, step = _oracle_grid(u, nodes)
  psi = None
  if variant == "J":
    center = float(cramer_asymptotics.psi_cramer(summary.gamma, summary.C, u))
  else:
    psi = renewal_oracle.solve_psi(model, u_max, step)
    center = float(psi.values[-1])

  if studentize == "asymptotic":
    scale = cramer_asymptotics.sigma_star(model, est.sigma_star_hat, u,
                                          summary)
  else:
    dot = np.array([
        g.values[-1]
        for g in renewal_oracle.solve_dot_psi(model, u_max, step, psi)
    ])
    quad_form = float(dot @ est.sigma_star_hat @ dot)
    if quad_form < cramer_asymptotics.NEGATIVE_QUAD_FLOOR:
      raise errors.NegativeQuadForm(
          "grad psi^T Sigma* grad psi = {:.3e} < 0".format(quad_form))
    scale = np.sqrt(max(quad_form, 0.0))

  half_width = z * float(scale) / np.sqrt(est.T)
  lo, hi = center - half_width, center + half_width
  return IntervalReport(variant=variant,
                        studentize=studentize,
                        u=float(u),
                        level=float(level),
                        z=z,
                        center=center,
                        scale=float(scale),
                        half_width=half_width,
                        lo=lo,
                        hi=hi,
                        lo_clipped=min(max(lo, 0.0), 1.0),
                        hi_clipped=min(max(hi, 0.0), 1.0),
                        estimate_report=est,
                        adjustment=solution,
                        cramer=summary)


def gamma_interval(est: estimate.EstimateReport,
                   level: float) -> AdjustmentInterval:
  """`gamma_hat +- z sqrt(v / T)` with `v` from `gamma_hat_variance`.

  Raises:
    NpcViolatedAtEstimate: If the estimated model violates the net profit
      condition.
  """
  z = normal_quantile(level)
  model = est.model()
  if not models.npc_check(model):
    raise errors.NpcViolatedAtEstimate(
        "estimated model violates the net profit condition")
  gamma = lundberg.solve_adjustment(model).gamma
  variance = lundberg.gamma_hat_variance(model, gamma, est.sigma_hat)
  return AdjustmentInterval(gamma=gamma,
                            variance=variance,
                            level=float(level),
                            half_width=z * np.sqrt(variance / est.T))


def true_psi(model: models.ModelSpec, u: float) -> float:
  """Reference `psi(u)`: closed form for `classical-exp`, else a fine oracle."""
  if model.family is models.Family.CLASSICAL_EXP:
    gamma = 1.0 / model.mu - model.lam / model.c
    return model.lam * model.mu / model.c * np.exp(-gamma * u)
  u_max, step = _oracle_grid(u, renewal_oracle.REFERENCE_NODES)
  return float(renewal_oracle.solve_psi(model, u_max, step).values[-1])


@dataclasses.dataclass(frozen=True)
class _Job:
  model: models.ModelSpec
  T: float
  u: float
  level: float
  variant: str
  studentize: str
  seed: int
  h: Optional[float]
  eps: Optional[float]
  reference: float


def _run_replicates(job, indices):
  """Returns `(index, hit, error_name)` for each replicate in `indices`."""
  out = []
  for index in indices:
    try:
      obs = simulate.simulate(job.model,
                              job.T,
                              job.seed,
                              h=job.h,
                              eps=job.eps,
                              replicate=index)
      report = build_interval(estimate.estimate(obs), job.u, job.level,
                              job.variant, job.studentize)
      out.append((index, report.contains(job.reference), None))
    except errors.RuinError as e:
      out.append((index, False, type(e).__name__))
  return out


def coverage_experiment(model: models.ModelSpec,
                        T: float,
                        u: float,
                        level: float,
                        replicates: int,
                        seed: int,
                        variant: str = "I",
                        studentize: str = "asymptotic",
                        h: float = None,
                        eps: float = None,
                        workers: int = 1) -> CoverageResult:
  """Empirical coverage of `build_interval` at the true parameter.

  Args:
    model: The true model; family, theta and premium rate.
    T: Horizon of each simulated data set.
    u: Initial capital.
    level: Nominal level in `(0, 1)`.
    replicates: Number of replicates, at least `MIN_REPLICATES`.
    seed: Master seed; replicate `k` uses the stream `(seed, k)`.
    variant: Interval variant, `"I"` or `"J"`.
    studentize: `"asymptotic"` or `"oracle"`.
    h: Grid step for `perturbed-exp`.
    eps: Jump threshold for `gamma-sub`.
    workers: Number of processes; 1 runs inline.

  Returns:
    A `CoverageResult`; the outcome does not depend on `workers`.

  Raises:
    ValueError: If `replicates < MIN_REPLICATES` or an argument is invalid.
  """
  if replicates < MIN_REPLICATES:
    raise ValueError("replicates must be >= {}, got {}".format(
        MIN_REPLICATES, replicates))
  _validate(u, variant, studentize)
  normal_quantile(level)
  if not models.npc_check(model):
    raise errors.NpcViolated("true model violates the net profit condition")
  job = _Job(model=model,
             T=float(T),
             u=float(u),
             level=float(level),
             variant=variant,
             studentize=studentize,
             seed=int(seed),
             h=h,
             eps=eps,
             reference=true_psi(model, u))

  workers = max(1, int(workers))
  chunks = [c.tolist() for c in np.array_split(np.arange(replicates), workers)]
  chunks = [c for c in chunks if c]
  if workers == 1:
    rows = _run_replicates(job, chunks[0])
  else:
    rows = []
    context = multiprocessing.get_context("spawn")
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers,
                                                mp_context=context) as pool:
      futures = [pool.submit(_run_replicates, job, c) for c in chunks]
      for future in concurrent.futures.as_completed(futures):
        rows.extend(future.result())
  rows.sort(key=lambda row: row[0])

  hits = sum(1 for _, hit, err in rows if err is None and hit)
  failures = {}
  for _, _, err in rows:
    if err is not None:
      failures[err] = failures.get(err, 0) + 1
  dropped = sum(failures.values())
  if dropped:
    logging.warning("dropped %d of %d replicates: %s", dropped, replicates,
                    failures)
  used = replicates - dropped
  coverage = hits / used if used else float("nan")
  logging.info("coverage %d/%d = %.4f at nominal %.3f", hits, used, coverage,
               level)
  config = {
      "model": model.to_dict(),
      "T": float(T),
      "u": float(u),
      "eps": eps,
      "h": h,
      "seed": int(seed),
      "variant": variant,
      "studentize": studentize,
      "reference_psi": job.reference,
  }
  return CoverageResult(replicates=replicates,
                        hits=hits,
                        dropped=dropped,
                        coverage=coverage,
                        nominal=float(level),
                        config=config,
                        failures=failures)
