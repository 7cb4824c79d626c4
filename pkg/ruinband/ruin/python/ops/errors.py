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
"""Errors raised by the ruin toolkit."""


class RuinError(Exception):
  """Base class of every failure raised by `ruinband.ruin`.

  `numerical` separates failures of the numerics (no root, quadrature did not
  converge, the net profit condition fails at some parameter) from problems
  with the supplied data. The command line maps the former to exit code 3.
  """
  numerical = True


class DomainError(RuinError, ValueError):
  """An argument lies outside the domain of a model function."""


class GammaInfiniteActivity(DomainError):
  """The gamma Levy tail diverges at zero."""


class NpcViolated(RuinError):
  """The net profit condition c > m fails."""


class NpcViolatedAtEstimate(NpcViolated):
  """The net profit condition fails at the estimated parameter."""


class NoRoot(RuinError):
  """A bracketed root search found no sign change."""


class DegenerateDenominator(RuinError):
  """A delta-method denominator vanishes."""


class MomentDiverges(RuinError):
  """The tilted moment of the Levy measure is infinite."""


class QuadratureFail(RuinError):
  """Adaptive quadrature did not reach the requested tolerance."""


class NoConvergence(RuinError):
  """A series or continued fraction did not converge within its term cap."""


class NegativeQuadForm(RuinError):
  """A covariance quadratic form came out negative."""


class StepTooCoarse(RuinError, ValueError):
  """The renewal grid is too coarse for the requested range."""
  numerical = False


class EpsilonZero(RuinError, ValueError):
  """Thresholded gamma jumps need a strictly positive threshold."""
  numerical = False


class InsufficientData(RuinError):
  """Too few observations for an estimator."""
  numerical = False


class MissingGrid(RuinError):
  """Grid observations of the surplus are required but absent."""
  numerical = False
