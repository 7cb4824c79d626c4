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
"""Run configuration of the `ruinband` command line.

Values come from absl flags; a flat `key = value` file given with `--config`
fills in every flag that was not set on the command line. `RUINBAND_SEED` is
the last fallback for the seed.
"""

import dataclasses
import os
from typing import Optional

from ruinband.ruin.python.ops import models

SEED_ENV = "RUINBAND_SEED"
COMMANDS = ("simulate", "estimate", "lundberg", "approx", "ci", "coverage")

# Flags that the config file may not set.
_FILE_EXCLUDED = frozenset(["config"])


class ConfigError(ValueError):
  """Invalid or inconsistent configuration."""


def apply_config_file(path, flag_values, known):
  """Sets flags from a `key = value` file unless given on the command line.

  Args:
    path: Config file path. Blank lines and `#` comments are ignored.
    flag_values: The absl `FlagValues` to update.
    known: Names of the flags the file may set.

  Raises:
    ConfigError: With a `path:line: key` diagnostic for unknown keys,
      malformed lines and unparsable values.
  """
  with open(path, encoding="utf-8") as f:
    lines = f.read().splitlines()
  for lineno, raw in enumerate(lines, start=1):
    line = raw.split("#", 1)[0].strip()
    if not line:
      continue
    if "=" not in line:
      raise ConfigError("{}:{}: expected 'key = value', got {!r}".format(
          path, lineno, raw))
    key, value = (part.strip() for part in line.split("=", 1))
    name = key.replace("-", "_")
    if name not in known or name in _FILE_EXCLUDED:
      raise ConfigError("{}:{}: {}: unknown key".format(path, lineno, key))
    flag = flag_values[name]
    try:
      parsed = flag.parser.parse(value)
    except ValueError as e:
      raise ConfigError("{}:{}: {}: {}".format(path, lineno, key, e))
    if not flag.present:
      flag.value = parsed


def resolve_seed(seed):
  """Flag or file seed, else `RUINBAND_SEED`, else 0."""
  if seed is not None:
    return int(seed)
  env = os.environ.get(SEED_ENV)
  if env is None or not env.strip():
    return 0
  try:
    return int(env)
  except ValueError:
    raise ConfigError("{}: not an integer: {!r}".format(SEED_ENV, env))


def _positive(name, value):
  if value is None:
    raise ConfigError("--{} is required".format(name))
  if not value > 0.0:
    raise ConfigError("--{} must be positive, got {}".format(name, value))


@dataclasses.dataclass(frozen=True)
class RunConfig:
  """Validated settings of one `ruinband` invocation."""
  command: str
  family: Optional[str] = None
  c: Optional[float] = None
  mu: Optional[float] = None
  lam: Optional[float] = None
  D: Optional[float] = None
  a: Optional[float] = None
  b: Optional[float] = None
  T: Optional[float] = None
  h: Optional[float] = None
  eps: Optional[float] = None
  u: Optional[float] = None
  u_max: float = 30.0
  step: Optional[float] = None
  stride: int = 32
  level: float = 0.95
  variant: str = "J"
  studentize: str = "asymptotic"
  replicates: int = 1000
  seed: int = 0
  workers: int = 1
  data_dir: Optional[str] = None
  out: Optional[str] = None
  format: str = "json"

  @classmethod
  def from_flags(cls, command, flag_values):
    """Builds a config from parsed absl flags."""
    values = {}
    for field in dataclasses.fields(cls):
      if field.name == "command":
        continue
      name = "lambda" if field.name == "lam" else field.name
      values[field.name] = flag_values[name].value
    values["seed"] = resolve_seed(values["seed"])
    if values["workers"] is None:
      values["workers"] = os.cpu_count() or 1
    return cls(command=command, **values)

  def model(self) -> models.ModelSpec:
    """The model named by `--family` and its parameter flags.

    Raises:
      ConfigError: For a missing family or parameter.
    """
    if self.family is None:
      raise ConfigError("--family is required for {}".format(self.command))
    family = models.Family(self.family)
    _positive("c", self.c)
    if family is models.Family.GAMMA_SUB:
      _positive("a", self.a)
      _positive("b", self.b)
      return models.ModelSpec.gamma_sub(self.c, self.a, self.b)
    _positive("mu", self.mu)
    _positive("lambda", self.lam)
    if family is models.Family.CLASSICAL_EXP:
      return models.ModelSpec.classical_exp(self.c, self.mu, self.lam)
    _positive("D", self.D)
    return models.ModelSpec.perturbed_exp(self.c, self.mu, self.lam, self.D)

  def validate(self):
    """Checks the fields the command needs.

    Raises:
      ConfigError: Naming the first offending flag.
    """
    if self.command not in COMMANDS:
      raise ConfigError("unknown command {!r}; expected one of {}".format(
          self.command, ", ".join(COMMANDS)))
    for name in ("T", "h", "eps", "u", "step"):
      value = getattr(self, name)
      if value is not None and not value > 0.0:
        raise ConfigError("--{} must be positive, got {}".format(name, value))
    _positive("u_max", self.u_max)
    if self.stride < 1:
      raise ConfigError("--stride must be >= 1, got {}".format(self.stride))
    if not 0.0 < self.level < 1.0:
      raise ConfigError("--level must lie in (0, 1), got {}".format(
          self.level))
    if self.replicates < 1:
      raise ConfigError("--replicates must be >= 1, got {}".format(
          self.replicates))
    if self.workers < 1:
      raise ConfigError("--workers must be >= 1, got {}".format(self.workers))
    if self.command in ("simulate", "lundberg", "approx", "coverage"):
      model = self.model()
      if self.command in ("simulate", "coverage"):
        _positive("T", self.T)
        if model.family is models.Family.PERTURBED_EXP:
          _positive("h", self.h)
        if model.family is models.Family.GAMMA_SUB:
          _positive("eps", self.eps)
    if self.command in ("simulate",) and not self.out:
      raise ConfigError("--out is required for simulate")
    if self.command in ("estimate", "ci") and not self.data_dir:
      raise ConfigError("--data_dir is required for {}".format(self.command))
    if self.command in ("ci", "coverage"):
      _positive("u", self.u)
    return self
