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
"""Parametric Levy families for the insurance surplus.

The surplus is `R_t = u + c t + sigma W_t - S_t` with `D = sigma^2 / 2` and a
subordinator `S` of Levy measure `nu_alpha`. Three families are supported:

* `classical-exp`: compound Poisson claims of intensity `lambda` with
  exponential sizes of mean `mu`; `D = 0`.
* `perturbed-exp`: the same claims plus a Brownian perturbation, `D > 0`.
* `gamma-sub`: gamma subordinator with Levy density `a z^-1 exp(-b z)`; `D = 0`.

The parameter vector is `theta = (alpha_1, alpha_2, D)`, ordered
`(mu, lambda, D)` for the exponential families and `(a, b, D)` for the gamma
family. Every function here is pure and accepts python floats or numpy arrays
for its spatial argument; gradients carry the theta axis last.
"""

import dataclasses
import enum
from typing import Tuple

import numpy as np
import tensorflow as tf

from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops import special_ops
from ruinband.utils.types import FloatArrayLike

# Below this |delta x| the perturbed kernel switches to its Taylor expansion.
_SERIES_SWITCH = 1e-3


class Family(enum.Enum):
  CLASSICAL_EXP = "classical-exp"
  PERTURBED_EXP = "perturbed-exp"
  GAMMA_SUB = "gamma-sub"

  @property
  def fixed_diffusion(self):
    return self is not Family.PERTURBED_EXP

  @property
  def exponential_claims(self):
    return self is not Family.GAMMA_SUB

  @property
  def param_names(self):
    if self.exponential_claims:
      return ("mu", "lambda", "D")
    return ("a", "b", "D")


@dataclasses.dataclass(frozen=True)
class ThetaVector:
  """Flattened parameter `(alpha_1, alpha_2, D)` of a family."""
  family: Family
  values: Tuple[float, float, float]

  p = 2

  def __post_init__(self):
    object.__setattr__(self, "family", Family(self.family))
    values = tuple(float(v) for v in self.values)
    if len(values) != self.p + 1:
      raise ValueError("ThetaVector needs {} entries, got {}".format(
          self.p + 1, len(values)))
    object.__setattr__(self, "values", values)

  @property
  def alpha(self):
    return np.asarray(self.values[:self.p])

  @property
  def D(self):
    return self.values[self.p]

  @property
  def names(self):
    return self.family.param_names

  def as_array(self):
    return np.asarray(self.values)

  def as_dict(self):
    return dict(zip(self.names, self.values))


@dataclasses.dataclass(frozen=True)
class ModelSpec:
  """A parametric surplus model: family, premium rate `c`, `alpha` and `D`.

  Use the named constructors `classical_exp`, `perturbed_exp` and `gamma_sub`
  rather than filling `alpha` by position.
  """
  family: Family
  c: float
  alpha: Tuple[float, float]
  D: float = 0.0

  def __post_init__(self):
    family = Family(self.family)
    object.__setattr__(self, "family", family)
    object.__setattr__(self, "c", float(self.c))
    object.__setattr__(self, "alpha", tuple(float(v) for v in self.alpha))
    object.__setattr__(self, "D", float(self.D))
    if len(self.alpha) != ThetaVector.p:
      raise ValueError("alpha must have {} entries, got {}".format(
          ThetaVector.p, len(self.alpha)))
    if not (np.isfinite(self.c) and self.c > 0.0):
      raise ValueError("premium rate c must be positive, got {}".format(self.c))
    for name, value in zip(family.param_names, self.alpha):
      if not (np.isfinite(value) and value > 0.0):
        raise ValueError("{} must be positive for {}, got {}".format(
            name, family.value, value))
    if family.fixed_diffusion:
      if self.D != 0.0:
        raise ValueError("{} fixes D = 0, got D = {}".format(
            family.value, self.D))
    elif not (np.isfinite(self.D) and self.D > 0.0):
      raise ValueError("D must be positive for {}, got {}".format(
          family.value, self.D))

  @classmethod
  def classical_exp(cls, c, mu, lam):
    return cls(Family.CLASSICAL_EXP, c, (mu, lam))

  @classmethod
  def perturbed_exp(cls, c, mu, lam, D):
    return cls(Family.PERTURBED_EXP, c, (mu, lam), D)

  @classmethod
  def gamma_sub(cls, c, a, b):
    return cls(Family.GAMMA_SUB, c, (a, b))

  def _param(self, name):
    names = self.family.param_names
    if name not in names[:ThetaVector.p]:
      raise AttributeError("{} has no parameter {}".format(
          self.family.value, name))
    return self.alpha[names.index(name)]

  @property
  def mu(self):
    return self._param("mu")

  @property
  def lam(self):
    return self._param("lambda")

  @property
  def a(self):
    return self._param("a")

  @property
  def b(self):
    return self._param("b")

  def theta(self):
    return ThetaVector(self.family, self.alpha + (self.D,))

  @classmethod
  def from_theta(cls, theta, c):
    return cls(theta.family, c, tuple(theta.values[:ThetaVector.p]), theta.D)

  def with_theta_values(self, values):
    """Returns a copy of this model with theta replaced by `values`."""
    return ModelSpec.from_theta(ThetaVector(self.family, tuple(values)), self.c)

  def to_dict(self):
    out = {"family": self.family.value, "c": self.c}
    out.update(self.theta().as_dict())
    return out

  @classmethod
  def from_dict(cls, d):
    family = Family(d["family"])
    names = family.param_names
    return cls(family, d["c"], (d[names[0]], d[names[1]]), d.get("D", 0.0))


def _finish(out, x):
  if np.ndim(x) == 0:
    return out.item() if np.ndim(out) == 0 else out
  return out


def npc_check(model: ModelSpec) -> bool:
  """Net profit condition `c > m_alpha`."""
  return model.c > levy_mean(model)


def levy_mean(model: ModelSpec) -> float:
  """Mean `E[S_1]` of the claim subordinator."""
  if model.family.exponential_claims:
    return model.lam * model.mu
  return model.a / model.b


def mgf_pole(model: ModelSpec) -> float:
  """Abscissa where the Levy exponent blows up: `1/mu` or `b`."""
  if model.family.exponential_claims:
    return 1.0 / model.mu
  return model.b


def diffusion_bound(model: ModelSpec) -> float:
  """`c/D`, infinite when `D = 0`."""
  if model.D == 0.0:
    return np.inf
  return model.c / model.D


def lundberg_upper_bound(model: ModelSpec) -> float:
  """Upper end `min(c/D, pole)` of the interval holding the adjustment root."""
  return min(diffusion_bound(model), mgf_pole(model))


def _gamma_e1(model, x):
  """E1(b x) with E1(0) = inf."""
  x = np.asarray(x, dtype=np.float64)
  safe = np.where(x > 0.0, x, 1.0)
  return np.where(x > 0.0, special_ops.exp_integral_e1(model.b * safe), np.inf)


def _x_e1(model, x):
  """x E1(b x), continuous at 0."""
  x = np.asarray(x, dtype=np.float64)
  safe = np.where(x > 0.0, x, 1.0)
  return np.where(x > 0.0, safe * special_ops.exp_integral_e1(model.b * safe),
                  0.0)


def _check_nonnegative(x):
  x = np.asarray(x, dtype=np.float64)
  if np.any(x < 0.0):
    raise errors.DomainError("argument must be >= 0, got min {}".format(
        np.min(x)))
  return x


def tail(model: ModelSpec, x: FloatArrayLike):
  """Levy tail `Pi_alpha(x) = nu_alpha(x, inf)`.

  Args:
    model: A `ModelSpec`.
    x: Non-negative level(s).

  Returns:
    `lambda exp(-x/mu)` for exponential claims, `a E1(b x)` for gamma.

  Raises:
    GammaInfiniteActivity: If `x = 0` for the gamma family.
  """
  xa = _check_nonnegative(x)
  if model.family.exponential_claims:
    return _finish(model.lam * np.exp(-xa / model.mu), x)
  if np.any(xa == 0.0):
    raise errors.GammaInfiniteActivity(
        "gamma Levy tail diverges at 0 (infinite activity)")
  return _finish(model.a * _gamma_e1(model, xa), x)


def grad_alpha_tail(model: ModelSpec, x: FloatArrayLike):
  """Gradient of `tail` in `alpha`, shape `x.shape + (2,)`."""
  xa = _check_nonnegative(x)
  if model.family.exponential_claims:
    mu, lam = model.alpha
    e = np.exp(-xa / mu)
    out = np.stack([lam * xa / mu**2 * e, e], axis=-1)
  else:
    if np.any(xa == 0.0):
      raise errors.GammaInfiniteActivity(
          "gamma Levy tail diverges at 0 (infinite activity)")
    a, b = model.alpha
    out = np.stack([_gamma_e1(model, xa), -a * np.exp(-b * xa) / b], axis=-1)
  return out


def integrated_tail(model: ModelSpec, x: FloatArrayLike):
  """`nu_I(x) = int_0^x Pi_alpha(z) dz`."""
  xa = _check_nonnegative(x)
  if model.family.exponential_claims:
    mu, lam = model.alpha
    return _finish(-lam * mu * np.expm1(-xa / mu), x)
  a, b = model.alpha
  return _finish(a * (_x_e1(model, xa) - np.expm1(-b * xa) / b), x)


def integrated_tail_bar(model: ModelSpec, x: FloatArrayLike):
  """`nu_bar_I(x) = int_x^inf Pi_alpha(z) dz`."""
  xa = _check_nonnegative(x)
  if model.family.exponential_claims:
    mu, lam = model.alpha
    return _finish(lam * mu * np.exp(-xa / mu), x)
  a, b = model.alpha
  return _finish(a * (np.exp(-b * xa) / b - _x_e1(model, xa)), x)


def grad_alpha_integrated_tail(model: ModelSpec, x: FloatArrayLike):
  """Gradient of `integrated_tail` in `alpha`."""
  xa = _check_nonnegative(x)
  if model.family.exponential_claims:
    mu, lam = model.alpha
    e = np.exp(-xa / mu)
    return np.stack([lam * (-np.expm1(-xa / mu)) - lam * xa / mu * e,
                     -mu * np.expm1(-xa / mu)],
                    axis=-1)
  a, b = model.alpha
  one_minus = -np.expm1(-b * xa)
  return np.stack([_x_e1(model, xa) + one_minus / b, -a * one_minus / b**2],
                  axis=-1)


def grad_alpha_integrated_tail_bar(model: ModelSpec, x: FloatArrayLike):
  """Gradient of `integrated_tail_bar` in `alpha`."""
  xa = _check_nonnegative(x)
  if model.family.exponential_claims:
    mu, lam = model.alpha
    e = np.exp(-xa / mu)
    return np.stack([lam * e * (1.0 + xa / mu), mu * e], axis=-1)
  a, b = model.alpha
  e = np.exp(-b * xa)
  return np.stack([e / b - _x_e1(model, xa), -a * e / b**2], axis=-1)


def _check_below_pole(model, r):
  r = np.asarray(r, dtype=np.float64)
  pole = mgf_pole(model)
  if np.any(r >= pole):
    raise errors.DomainError(
        "r must lie below the mgf pole {} of {}, got max {}".format(
            pole, model.family.value, np.max(r)))
  return r


def levy_exponent(model: ModelSpec, r: FloatArrayLike):
  """`J(r) = int (exp(r z) - 1) nu(dz)`."""
  ra = _check_below_pole(model, r)
  if model.family.exponential_claims:
    mu, lam = model.alpha
    return _finish(lam * mu * ra / (1.0 - mu * ra), r)
  a, b = model.alpha
  return _finish(-a * np.log1p(-ra / b), r)


def tilted_moment(model: ModelSpec, r: FloatArrayLike):
  """`J'(r) = int z exp(r z) nu(dz)`."""
  ra = _check_below_pole(model, r)
  if model.family.exponential_claims:
    mu, lam = model.alpha
    return _finish(lam * mu / (1.0 - mu * ra)**2, r)
  a, b = model.alpha
  return _finish(a / (b - ra), r)


def kappa(model: ModelSpec, r: FloatArrayLike):
  """Modified Lundberg function `kappa(r) = -c r + D r^2 + J(r)`.

  Args:
    model: A `ModelSpec`.
    r: Argument(s) below `mgf_pole(model)`.

  Returns:
    `kappa(r)`; exactly 0 at `r = 0`.

  Raises:
    DomainError: If `r >= mgf_pole(model)`.
  """
  ra = np.asarray(r, dtype=np.float64)
  out = -model.c * ra + model.D * ra**2 + np.asarray(levy_exponent(model, ra))
  return _finish(out, r)


def kappa_prime_r(model: ModelSpec, r: FloatArrayLike):
  """`d kappa / d r = -c + 2 D r + J'(r)`."""
  ra = np.asarray(r, dtype=np.float64)
  out = -model.c + 2.0 * model.D * ra + np.asarray(tilted_moment(model, ra))
  return _finish(out, r)


def grad_alpha_kappa(model: ModelSpec, r: float):
  """Gradient of `kappa(r)` in `alpha`, shape `(2,)`."""
  r = float(_check_below_pole(model, r))
  if model.family.exponential_claims:
    mu, lam = model.alpha
    return np.array([lam * r / (1.0 - mu * r)**2, mu * r / (1.0 - mu * r)])
  a, b = model.alpha
  return np.array([-np.log1p(-r / b), a * (1.0 / b - 1.0 / (b - r))])


def grad_kappa(model: ModelSpec, r: float):
  """Gradient of `kappa(r)` in the full theta, shape `(3,)`."""
  return np.append(grad_alpha_kappa(model, r), float(r)**2)


def kappa_tensor(model: ModelSpec, r, theta=None):
  """`kappa` written with TensorFlow ops so it can be differentiated.

  Args:
    model: Supplies the family and premium rate.
    r: Scalar float64 tensor.
    theta: Optional float64 tensor of shape `[3]` replacing `model.theta()`.

  Returns:
    A scalar float64 tensor.
  """
  if theta is None:
    theta = tf.constant(model.theta().as_array(), dtype=tf.float64)
  r = tf.convert_to_tensor(r, dtype=tf.float64)
  theta = tf.convert_to_tensor(theta, dtype=tf.float64)
  if model.family.exponential_claims:
    mu, lam = theta[0], theta[1]
    jump = lam * mu * r / (1.0 - mu * r)
  else:
    a, b = theta[0], theta[1]
    jump = -a * tf.math.log1p(-r / b)
  return -model.c * r + theta[2] * r * r + jump


def _phi(delta, x):
  """`(1 - exp(-delta x)) / delta` and its derivative in `delta`."""
  x = np.asarray(x, dtype=np.float64)
  z = delta * x
  small = np.abs(z) < _SERIES_SWITCH
  if delta == 0.0:
    zs = np.zeros_like(x)
    safe_delta = 1.0
  else:
    zs = z
    safe_delta = delta
  # Taylor branch: phi = x sum (-z)^k/(k+1)!, phi' = -x^2 sum (k+1)(-z)^k/(k+2)!
  phi_series = x * (1.0 - zs / 2.0 + zs**2 / 6.0 - zs**3 / 24.0)
  dphi_series = -x**2 * (0.5 - zs / 3.0 + zs**2 / 8.0 - zs**3 / 30.0)
  phi_exact = -np.expm1(-zs) / safe_delta
  dphi_exact = (x * np.exp(-zs) - phi_exact) / safe_delta
  phi = np.where(small, phi_series, phi_exact)
  dphi = np.where(small, dphi_series, dphi_exact)
  return phi, dphi


def _perturbed_delta(model):
  mu = model.mu
  return model.c / model.D - 1.0 / mu


def _gamma_scaled_e1(model, x):
  """exp(b x) E1(b x) with the value inf at 0."""
  x = np.asarray(x, dtype=np.float64)
  safe = np.where(x > 0.0, x, 1.0)
  return np.where(x > 0.0,
                  special_ops.scaled_exp_integral_e1(model.b * safe), np.inf)


def _perturbed_pieces(model, u, tilt):
  """`exp((tilt - 1/mu) u)` times `phi(delta, u)` and times `dphi(delta, u)`.

  `exp(-u/mu) phi(delta, u) = (exp(-u/mu) - exp(-c u/D)) / delta` is
  symmetric in the two rates, so it is evaluated as
  `exp(-m u) phi(|delta|, u)` with `m = min(1/mu, c/D)`. Neither factor
  overflows, for either sign of `delta`.
  """
  mu, c, D = model.mu, model.c, model.D
  delta = _perturbed_delta(model)
  phi_abs, _ = _phi(abs(delta), u)
  p = np.exp((tilt - min(1.0 / mu, c / D)) * u) * phi_abs
  small = np.abs(delta * u) < _SERIES_SWITCH
  _, dphi_small = _phi(delta, np.where(small, u, 0.0))
  safe_delta = delta if delta != 0.0 else 1.0
  q = np.where(small,
               np.exp((tilt - 1.0 / mu) * u) * dphi_small,
               (u * np.exp((tilt - c / D) * u) - p) / safe_delta)
  return p, q


def ladder_g(model: ModelSpec, u: FloatArrayLike, tilt: float = 0.0):
  """Ladder density `g = (1/c) k_D * Pi_alpha` of the renewal equation.

  `k_D` is the exponential density with mean `D/c`; for `D = 0` it is the
  point mass at 0 and `g = Pi_alpha / c`. The gamma density is infinite at 0.

  Args:
    model: A `ModelSpec`.
    u: Non-negative float or array.
    tilt: Returns `exp(tilt u) g(u)` instead, evaluated without overflow for
      every `tilt` below `lundberg_upper_bound(model)`.
  """
  ua = _check_nonnegative(u)
  if model.family is Family.CLASSICAL_EXP:
    out = model.lam / model.c * np.exp((tilt - 1.0 / model.mu) * ua)
  elif model.family is Family.GAMMA_SUB:
    out = (model.a / model.c * np.exp((tilt - model.b) * ua) *
           _gamma_scaled_e1(model, ua))
  else:
    p, _ = _perturbed_pieces(model, ua, tilt)
    out = model.lam / model.D * p
  return _finish(out, u)


def ladder_h(model: ModelSpec, u: FloatArrayLike, tilt: float = 0.0):
  """Forcing term `h` of the renewal equation; `h(0) = psi(0)`.

  For `D = 0`, `h = nu_bar_I / c`. `tilt` as in `ladder_g`.
  """
  ua = _check_nonnegative(u)
  if model.family is Family.CLASSICAL_EXP:
    out = (model.lam * model.mu / model.c *
           np.exp((tilt - 1.0 / model.mu) * ua))
  elif model.family is Family.GAMMA_SUB:
    a, b = model.alpha
    safe = np.where(ua > 0.0, ua, 1.0)
    x_scaled = np.where(ua > 0.0,
                        safe * special_ops.scaled_exp_integral_e1(b * safe),
                        0.0)
    out = a / model.c * np.exp((tilt - b) * ua) * (1.0 / b - x_scaled)
  else:
    out = (model.mu * np.asarray(ladder_g(model, ua, tilt)) +
           np.exp((tilt - model.c / model.D) * ua))
  return _finish(out, u)


def grad_g(model: ModelSpec, u: FloatArrayLike, tilt: float = 0.0):
  """Gradient of `ladder_g(u, tilt)` in theta, shape `u.shape + (3,)`."""
  ua = _check_nonnegative(u)
  zero = np.zeros_like(ua)
  if model.family is Family.CLASSICAL_EXP:
    mu, lam = model.alpha
    e = np.exp((tilt - 1.0 / mu) * ua)
    return np.stack([lam * ua / (model.c * mu**2) * e, e / model.c, zero],
                    axis=-1)
  if model.family is Family.GAMMA_SUB:
    a, b = model.alpha
    e = np.exp((tilt - b) * ua)
    return np.stack([
        e * _gamma_scaled_e1(model, ua) / model.c, -a * e / (b * model.c),
        zero
    ],
                    axis=-1)
  mu, lam = model.alpha
  D, c = model.D, model.c
  p, q = _perturbed_pieces(model, ua, tilt)
  g = lam / D * p
  d_mu = lam / D * (ua / mu**2 * p + q / mu**2)
  d_lam = p / D
  d_D = -g / D - lam / D * q * c / D**2
  return np.stack([d_mu, d_lam, d_D], axis=-1)


def grad_h(model: ModelSpec, u: FloatArrayLike):
  """Gradient of `ladder_h(u)` in theta, shape `u.shape + (3,)`."""
  ua = _check_nonnegative(u)
  zero = np.zeros_like(ua)
  if model.family.fixed_diffusion:
    return np.concatenate(
        [grad_alpha_integrated_tail_bar(model, ua) / model.c, zero[..., None]],
        axis=-1)
  mu, c, D = model.mu, model.c, model.D
  g = np.asarray(ladder_g(model, ua))
  dg = grad_g(model, ua)
  out = mu * dg
  out[..., 0] += g
  out[..., 2] += c * ua / D**2 * np.exp(-c * ua / D)
  return out


def ladder_g_mass(model: ModelSpec, x: FloatArrayLike):
  """`G(x) = int_0^x g`; `G(inf) = m_alpha / c`."""
  xa = _check_nonnegative(x)
  if model.family.fixed_diffusion:
    out = np.asarray(integrated_tail(model, xa)) / model.c
  else:
    # G + mu g = (lambda mu / c)(1 - exp(-c x / D))
    mu, lam = model.alpha
    out = (-lam * mu / model.c * np.expm1(-model.c * xa / model.D) -
           mu * np.asarray(ladder_g(model, xa)))
  return _finish(out, x)


def grad_g_mass(model: ModelSpec, x: FloatArrayLike):
  """Gradient of `ladder_g_mass(x)` in theta, shape `x.shape + (3,)`."""
  xa = _check_nonnegative(x)
  if model.family.fixed_diffusion:
    zero = np.zeros_like(xa)
    return np.concatenate(
        [grad_alpha_integrated_tail(model, xa) / model.c, zero[..., None]],
        axis=-1)
  mu, lam = model.alpha
  c, D = model.c, model.D
  one_minus = -np.expm1(-c * xa / D)
  e_beta = np.exp(-c * xa / D)
  g = np.asarray(ladder_g(model, xa))
  dg = grad_g(model, xa)
  d_mu = lam / c * one_minus - g - mu * dg[..., 0]
  d_lam = mu / c * one_minus - mu * dg[..., 1]
  d_D = -lam * mu * xa / D**2 * e_beta - mu * dg[..., 2]
  return np.stack([d_mu, d_lam, d_D], axis=-1)
