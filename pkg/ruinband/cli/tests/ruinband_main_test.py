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
import io
import json
import sys

import numpy as np
import pandas as pd
import pytest

from ruinband.cli import ruinband_main
from ruinband.cli import run_config
from ruinband.ruin.python.ops import models
from ruinband.ruin.python.ops import simulate

_CLASSICAL = ["--family", "classical-exp", "--c", "2", "--mu", "1", "--lambda",
              "1"]


def _run(*args):
  return ruinband_main.execute(["ruinband"] + list(args))


def _json_out(capsys):
  return json.loads(capsys.readouterr().out)


def test_lundberg_json(capsys):
  assert _run("lundberg", *_CLASSICAL) == 0
  out = _json_out(capsys)
  assert out["gamma"] == pytest.approx(0.5, abs=1e-12)
  assert out["model"]["lambda"] == 1.0
  assert out["spec_version"] == "1"


def test_simulate_is_reproducible(tmp_path):
  for name in ["first", "second"]:
    code = _run("simulate", *_CLASSICAL, "--T", "50", "--seed", "3", "--out",
                str(tmp_path / name))
    assert code == 0
  for filename in ["claims.csv", "meta.json"]:
    first = (tmp_path / "first" / filename).read_bytes()
    assert first == (tmp_path / "second" / filename).read_bytes()


def test_negative_horizon_is_rejected(tmp_path):
  assert _run("simulate", *_CLASSICAL, "--T", "-5", "--out",
              str(tmp_path)) == 2


def test_unknown_command_and_flag():
  assert _run("forecast", *_CLASSICAL) == 2
  assert _run("lundberg", "--colour", "red") == 2
  assert _run("lundberg", "--family", "compound-lognormal") == 2


def test_estimate_and_ci(tmp_path, capsys):
  data = str(tmp_path / "data")
  assert _run("simulate", *_CLASSICAL, "--T", "2000", "--seed", "1", "--out",
              data) == 0
  assert _run("estimate", "--data_dir", data) == 0
  report = _json_out(capsys)
  assert report["family"] == "classical-exp"
  assert report["theta_hat"]["mu"] == pytest.approx(1.0, rel=0.15)

  assert _run("ci", "--data_dir", data, "--u", "5", "--level", "0.9") == 0
  interval = _json_out(capsys)
  assert interval["variant"] == "J"
  assert interval["lo"] <= interval["center"] <= interval["hi"]
  assert interval["level"] == 0.9


def test_ci_npc_violation_is_numerical(tmp_path):
  obs = simulate.ObservationSet(models.Family.CLASSICAL_EXP, 0.5, 4.0,
                                [1.0, 2.0], [1.0, 3.0])
  simulate.write_observations(obs, str(tmp_path))
  assert _run("ci", "--data_dir", str(tmp_path), "--u", "5") == 3


def test_too_few_claims_is_a_data_error(tmp_path):
  obs = simulate.ObservationSet(models.Family.CLASSICAL_EXP, 2.0, 4.0, [1.0],
                                [1.0])
  simulate.write_observations(obs, str(tmp_path))
  assert _run("estimate", "--data_dir", str(tmp_path)) == 2
  assert _run("ci", "--data_dir", str(tmp_path), "--u", "5") == 2


def test_missing_grid_is_a_data_error(tmp_path):
  obs = simulate.ObservationSet(models.Family.PERTURBED_EXP, 2.0, 4.0,
                                [1.0, 2.0], [1.0, 3.0])
  simulate.write_observations(obs, str(tmp_path))
  assert _run("estimate", "--data_dir", str(tmp_path)) == 2


def test_ci_needs_data_dir():
  assert _run("ci", "--u", "5") == 2


def test_approx_gamma(capsys):
  assert _run("approx", "--family", "gamma-sub", "--a", "1", "--b", "2",
              "--c", "1", "--u_max", "20") == 0
  frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
  assert list(frame.columns[:3]) == ["u", "psi_cramer", "psi_oracle"]
  assert "dot_psi_oracle_a" in frame.columns
  assert "dot_psi_asymptotic_b" in frame.columns
  rate = -np.log(frame["psi_cramer"].iloc[1] /
                 frame["psi_cramer"].iloc[0]) / frame["u"].iloc[1]
  assert rate == pytest.approx(1.5936, abs=1e-4)
  assert frame["psi_oracle"].iloc[0] == pytest.approx(0.5)


def test_config_file_precedence(tmp_path, capsys):
  config = tmp_path / "run.cfg"
  config.write_text("# classical model\n"
                    "family = classical-exp\n"
                    "c = 3\n"
                    "mu = 1\n"
                    "lambda = 1\n")
  assert _run("lundberg", "--config", str(config)) == 0
  assert _json_out(capsys)["gamma"] == pytest.approx(2.0 / 3.0)
  assert _run("lundberg", "--config", str(config), "--c", "2") == 0
  assert _json_out(capsys)["gamma"] == pytest.approx(0.5)


def test_config_file_unknown_key(tmp_path):
  config = tmp_path / "run.cfg"
  config.write_text("family = classical-exp\ncolour = red\n")
  with pytest.raises(run_config.ConfigError, match=r"run.cfg:2: colour"):
    run_config.apply_config_file(str(config), ruinband_main.FLAGS,
                                 ruinband_main._CONFIG_KEYS)
  assert _run("lundberg", "--config", str(config)) == 2


def test_seed_from_environment(tmp_path, monkeypatch):
  monkeypatch.setenv(run_config.SEED_ENV, "5")
  assert _run("simulate", *_CLASSICAL, "--T", "20", "--out",
              str(tmp_path / "env")) == 0
  monkeypatch.delenv(run_config.SEED_ENV)
  assert _run("simulate", *_CLASSICAL, "--T", "20", "--seed", "5", "--out",
              str(tmp_path / "flag")) == 0
  assert ((tmp_path / "env" / "claims.csv").read_bytes() == (
      tmp_path / "flag" / "claims.csv").read_bytes())
  meta = json.loads((tmp_path / "env" / "meta.json").read_text())
  assert meta["seed"] == 5


def test_resolve_seed(monkeypatch):
  monkeypatch.delenv(run_config.SEED_ENV, raising=False)
  assert run_config.resolve_seed(None) == 0
  assert run_config.resolve_seed(7) == 7
  monkeypatch.setenv(run_config.SEED_ENV, "x")
  with pytest.raises(run_config.ConfigError):
    run_config.resolve_seed(None)


def test_help_names_units():
  assert "[1/time]" in ruinband_main.FLAGS["lambda"].help
  assert "[currency/time]" in ruinband_main.FLAGS["c"].help
  assert "[time]" in ruinband_main.FLAGS["T"].help


def test_coverage_csv(tmp_path):
  out = tmp_path / "coverage.csv"
  code = _run("coverage", *_CLASSICAL, "--T", "500", "--u", "2",
              "--replicates", "100", "--workers", "1", "--seed", "9",
              "--format", "csv", "--out", str(out))
  assert code == 0
  frame = pd.read_csv(out)
  assert len(frame) == 1
  assert frame["replicates"].iloc[0] == 100
  assert 0.0 <= frame["coverage"].iloc[0] <= 1.0


if __name__ == "__main__":
  sys.exit(pytest.main([__file__]))
