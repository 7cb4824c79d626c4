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
"""Cramer approximation of the ruin probability and its theta-gradients.

For `psi(u) ~ C exp(-gamma u)` this module provides the constant `C`, the mean
`mu_theta` of the tilted ladder density `exp(gamma x) g(x)`, the Laplace
transform of `grad g` at `-gamma`, the coefficient
`zeta = C laplace_grad_g / mu_theta` of `grad psi(u) ~ zeta u exp(-gamma u)`,
and the delta-method scale `sigma_star`.

Integrals over the tilted kernel are computed by adaptive quadrature; the
`*_closed_form` functions are independent code paths used for checking.
"""

import collections
import dataclasses

import numpy as np
from scipy import integrate

from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import lundberg
from ruinband.ruin.python.ops import models

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 200
QUAD_ACCEPT = 1e-9
TRUNCATION_RATES = 50.0
NEGATIVE_QUAD_FLOOR = -1e-14
DEGENERATE_KERNEL = 1e-8

ClosedForms = collections.namedtuple("ClosedForms",
                                     ["C", "mu_theta", "laplace_grad_g"])


@dataclasses.dataclass(frozen=True)
class CramerSummary:
  """Cramer-approximation quantities of one model."""
  gamma: float
  C: float
  mu_theta: float
  laplace_grad_g: np.ndarray
  zeta: np.ndarray

  def to_dict(self):
    return {
        "gamma": self.gamma,
        "C": self.C,
        "mu_theta": self.mu_theta,
        "laplace_grad_g": [float(v) for v in self.laplace_grad_g],
        "zeta": [float(v) for v in self.zeta],
    }


def _tilt_rate(model, gamma):
  rate = models.lundberg_upper_bound(model) - gamma
  if not rate > 0.0:
    raise errors.MomentDiverges(
        "gamma = {} is not below min(c/D, pole) = {}".format(
            gamma, models.lundberg_upper_bound(model)))
  return rate


def tilted_integral(fn, rate):
  """Integrates `fn` on `[0, inf)` for integrands decaying like `exp(-rate x)`.

  The range is cut at `TRUNCATION_RATES / rate` and the exponential tail
  beyond it is added analytically.

  Raises:
    QuadratureFail: If the error estimate exceeds `QUAD_ACCEPT`.
  """
  scale = 1.0 / rate
  x_max = TRUNCATION_RATES * scale
  value, abserr, *rest = integrate.quad(fn,
                                        0.0,
                                        x_max,
                                        epsabs=QUAD_EPSABS,
                                        epsrel=QUAD_EPSREL,
                                        limit=QUAD_LIMIT,
                                        points=[scale, 5.0 * scale],
                                        full_output=1)
  if abserr > QUAD_ACCEPT * max(1.0, abs(value)):
    message = rest[1] if len(rest) > 1 else "error estimate too large"
    raise errors.QuadratureFail("quad error {:.3e} on [0, {:.6g}]: {}".format(
        abserr, x_max, message))
  return value + fn(x_max) / rate


def cramer_constant(model: models.ModelSpec, gamma: float) -> float:
  """`C = (c - m) / (int z exp(gamma z) nu(dz) - c + 2 D gamma)`.

  Raises:
    MomentDiverges: If `gamma` is at or beyond the mgf pole.
    DegenerateDenominator: If the denominator `kappa'(gamma)` is not positive.
  """
  if gamma >= models.mgf_pole(model):
    raise errors.MomentDiverges(
        "int z exp(gamma z) nu(dz) diverges for gamma = {} >= {}".format(
            gamma, models.mgf_pole(model)))
  denominator = models.kappa_prime_r(model, gamma)
  if not denominator > 0.0:
    raise errors.DegenerateDenominator(
        "kappa'(gamma) = {} is not positive".format(denominator))
  return (model.c - models.levy_mean(model)) / denominator


def psi_cramer(gamma, C, u):
  """Cramer approximation `C exp(-gamma u)`."""
  return C * np.exp(-gamma * np.asarray(u, dtype=np.float64))


def tilted_mass(model: models.ModelSpec, gamma: float) -> float:
  """`int_0^inf exp(gamma x) g(x) dx`, equal to 1 at the adjustment root."""
  return _integrate(model, gamma,
                    lambda x: models.ladder_g(model, x, tilt=gamma))


def _gamma_split_integral(model, gamma, fn, rate):
  # quad copes with the integrable log singularity at 0 but converges faster
  # when the first unit of b x is integrated on its own.
  head_end = min(1.0 / model.b, 1.0 / rate)
  head, abserr = integrate.quad(fn,
                                0.0,
                                head_end,
                                epsabs=QUAD_EPSABS,
                                epsrel=QUAD_EPSREL,
                                limit=QUAD_LIMIT)
  if abserr > QUAD_ACCEPT * max(1.0, abs(head)):
    raise errors.QuadratureFail(
        "quad error {:.3e} near the origin".format(abserr))
  return head + tilted_integral(lambda y: fn(y + head_end), rate)


def _integrate(model, gamma, fn):
  rate = _tilt_rate(model, gamma)
  if model.family is models.Family.GAMMA_SUB:
    return _gamma_split_integral(model, gamma, fn, rate)
  return tilted_integral(fn, rate)


def mu_theta(model: models.ModelSpec, gamma: float) -> float:
  """Mean of the tilted ladder density, `int x exp(gamma x) g(x) dx`.

  Raises:
    QuadratureFail: On non-convergence.
  """
  return _integrate(
      model, gamma, lambda x: x * models.ladder_g(model, x, tilt=gamma))


def mu_theta_closed_form(model: models.ModelSpec, gamma: float) -> float:
  """`kappa'(gamma) / (gamma (c - D gamma))`."""
  return models.kappa_prime_r(model, gamma) / (gamma *
                                               (model.c - model.D * gamma))


def laplace_grad_g(model: models.ModelSpec, gamma: float) -> np.ndarray:
  """`int_0^inf exp(gamma x) grad g(x) dx` componentwise, shape `(3,)`.

  The D-component is 0 for families with fixed `D = 0`.
  """
  out = np.zeros(3)
  for i in range(3):
    if i == 2 and model.family.fixed_diffusion:
      continue
    out[i] = _integrate(
        model, gamma,
        lambda x, i=i: models.grad_g(model, x, tilt=gamma)[..., i])
  return out


def laplace_grad_g_closed_form(model: models.ModelSpec,
                               gamma: float) -> np.ndarray:
  """`grad J(gamma) / (gamma (c - D gamma))` and `gamma / (c - D gamma)`.

  `J` is the Levy exponent; the Laplace transform of `g` at `-gamma` is
  `J(gamma) / (gamma (c - D gamma))` for every family.
  """
  denominator = model.c - model.D * gamma
  out = np.zeros(3)
  out[:2] = models.grad_alpha_kappa(model, gamma) / (gamma * denominator)
  if not model.family.fixed_diffusion:
    out[2] = gamma / denominator
  return out


def exponential_closed_forms(model: models.ModelSpec,
                             gamma: float) -> ClosedForms:
  """Explicit `C`, `mu_theta` and `laplace_grad_g` for exponential claims.

  With `p_mu = 1/(1/mu - gamma)` and `p_D = 1/(c/D - gamma)`:

  * classical: `C = lambda mu / c`, `mu_theta = lambda p_mu^2 / c`,
    `L = (lambda p_mu^2 / (c mu^2), p_mu / c, 0)`.
  * perturbed: `mu_theta = lambda mu (p_mu^2 - p_D^2) / (c mu - D)` and
    `L_mu = lambda D (p_D - p_mu) / (c mu - D)^2
            + lambda p_mu^2 / (mu (c mu - D))`,
    `L_lambda = mu (p_mu - p_D) / (c mu - D)`,
    `L_D = lambda mu (p_mu - p_D) / (c mu - D)^2
           - lambda mu c p_D^2 / (D^2 (c mu - D))`.

  Raises:
    TypeError: For the gamma family.
    DomainError: For a perturbed model with `c mu = D`.
  """
  if not model.family.exponential_claims:
    raise TypeError("closed forms need exponential claims, got {}".format(
        model.family.value))
  mu, lam = model.alpha
  c, D = model.c, model.D
  p_mu = 1.0 / (1.0 / mu - gamma)
  if model.family is models.Family.CLASSICAL_EXP:
    return ClosedForms(
        C=lam * mu / c,
        mu_theta=lam * p_mu**2 / c,
        laplace_grad_g=np.array([lam * p_mu**2 / (c * mu**2), p_mu / c, 0.0]))
  gap = c * mu - D
  if abs(gap) < DEGENERATE_KERNEL * c * mu:
    raise errors.DomainError(
        "closed forms are singular at c mu = D = {}".format(D))
  p_D = 1.0 / (c / D - gamma)
  tilted_moment = lam * mu / (1.0 - mu * gamma)**2
  return ClosedForms(
      C=(c - lam * mu) / (tilted_moment - c + 2.0 * D * gamma),
      mu_theta=lam * mu / gap * (p_mu**2 - p_D**2),
      laplace_grad_g=np.array([
          lam * D / gap**2 * (p_D - p_mu) + lam / (mu * gap) * p_mu**2,
          mu / gap * (p_mu - p_D),
          lam * mu / gap**2 * (p_mu - p_D) - lam * mu * c / (D**2 * gap) *
          p_D**2,
      ]))


def cramer_constant_renewal(model: models.ModelSpec, gamma: float) -> float:
  """`C` through the key renewal theorem, `int exp(gamma x) h(x) dx / mu_theta`."""
  numerator = _integrate(
      model, gamma, lambda x: models.ladder_h(model, x, tilt=gamma))
  return numerator / mu_theta(model, gamma)


def summarize(model: models.ModelSpec, gamma=None) -> CramerSummary:
  """Collects `C`, `mu_theta`, `laplace_grad_g` and `zeta` for `model`.

  Args:
    model: A `ModelSpec` satisfying the net profit condition.
    gamma: Optional adjustment coefficient; solved for when omitted.

  Returns:
    A `CramerSummary`.
  """
  if gamma is None:
    gamma = lundberg.solve_adjustment(model).gamma
  C = cramer_constant(model, gamma)
  m_theta = mu_theta(model, gamma)
  laplace = laplace_grad_g(model, gamma)
  return CramerSummary(gamma=float(gamma),
                       C=float(C),
                       mu_theta=float(m_theta),
                       laplace_grad_g=laplace,
                       zeta=C * laplace / m_theta)


def zeta(model: models.ModelSpec, summary=None) -> np.ndarray:
  """Gradient coefficient `zeta = C laplace_grad_g / mu_theta`, shape `(3,)`."""
  summary = summary or summarize(model)
  return summary.zeta


def dot_psi_asymptotic(model: models.ModelSpec, u, summary=None):
  """First-order asymptote `zeta u exp(-gamma u)` of `grad psi(u)`.

  Returns an array of shape `u.shape + (3,)`.
  """
  summary = summary or summarize(model)
  u = np.asarray(u, dtype=np.float64)
  return (u * np.exp(-summary.gamma * u))[..., None] * summary.zeta


def ddot_psi_asymptotic(model: models.ModelSpec, u, summary=None):
  """Second-order asymptote `C v v^T u^2 exp(-gamma u)`, `v = L / mu_theta`.

  Returns an array of shape `u.shape + (3, 3)`.
  """
  summary = summary or summarize(model)
  u = np.asarray(u, dtype=np.float64)
  v = summary.laplace_grad_g / summary.mu_theta
  outer = summary.C * np.outer(v, v)
  return (u**2 * np.exp(-summary.gamma * u))[..., None, None] * outer


def sigma_star_prefactor(model: models.ModelSpec,
                         sigma_star_matrix,
                         summary=None) -> float:
  """`sqrt(zeta^T Sigma* zeta)`.

  Raises:
    NegativeQuadForm: If the quadratic form is below `NEGATIVE_QUAD_FLOOR`.
  """
  summary = summary or summarize(model)
  sigma_star_matrix = np.asarray(sigma_star_matrix, dtype=np.float64)
  quad_form = float(summary.zeta @ sigma_star_matrix @ summary.zeta)
  if quad_form < NEGATIVE_QUAD_FLOOR:
    raise errors.NegativeQuadForm(
        "zeta^T Sigma* zeta = {:.3e} < 0".format(quad_form))
  return np.sqrt(max(quad_form, 0.0))


def sigma_star(model: models.ModelSpec, sigma_star_matrix, u, summary=None):
  """Delta-method scale `sqrt(zeta^T Sigma* zeta) u exp(-gamma u)`."""
  summary = summary or summarize(model)
  prefactor = sigma_star_prefactor(model, sigma_star_matrix, summary)
  u = np.asarray(u, dtype=np.float64)
  out = prefactor * u * np.exp(-summary.gamma * u)
  return out.item() if out.ndim == 0 else out
