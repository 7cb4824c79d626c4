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
"""Export ruin-probability APIs."""

__all__ = [
    'AdjustmentInterval',
    'CoverageResult',
    'CramerSummary',
    'EstimateReport',
    'Family',
    'GridFunction',
    'IntervalReport',
    'LundbergSolution',
    'ModelSpec',
    'ObservationSet',
    'ThetaVector',
    'build_interval',
    'coverage_experiment',
    'cramer_constant',
    'ddot_psi_asymptotic',
    'dot_psi_asymptotic',
    'errors',
    'estimate',
    'estimate_diffusion',
    'estimate_perturbed',
    'exp_integral_e1',
    'finite_diff_dot_psi',
    'gamma_hat_variance',
    'gamma_interval',
    'grad_alpha_kappa',
    'grad_g',
    'grad_h',
    'kappa',
    'kappa_prime_r',
    'ladder_g',
    'ladder_h',
    'laplace_grad_g',
    'levy_mean',
    'mle_exponential',
    'mle_gamma',
    'mu_theta',
    'npc_check',
    'psi_cramer',
    'read_observations',
    'sigma_star',
    'simulate',
    'simulate_classical',
    'simulate_gamma_jumps',
    'simulate_perturbed',
    'solve_adjustment',
    'solve_dot_psi',
    'solve_psi',
    'summarize',
    'tail',
    'write_observations',
    'zeta',
]

from ruinband.ruin.python.ops import errors
from ruinband.ruin.python.ops.confidence import (
    AdjustmentInterval,
    CoverageResult,
    IntervalReport,
    build_interval,
    coverage_experiment,
    gamma_interval,
)
from ruinband.ruin.python.ops.cramer_asymptotics import (
    CramerSummary,
    cramer_constant,
    ddot_psi_asymptotic,
    dot_psi_asymptotic,
    laplace_grad_g,
    mu_theta,
    psi_cramer,
    sigma_star,
    summarize,
    zeta,
)
from ruinband.ruin.python.ops.estimate import (
    EstimateReport,
    estimate,
    estimate_diffusion,
    estimate_perturbed,
    mle_exponential,
    mle_gamma,
)
from ruinband.ruin.python.ops.lundberg import (
    LundbergSolution,
    gamma_hat_variance,
    solve_adjustment,
)
from ruinband.ruin.python.ops.models import (
    Family,
    ModelSpec,
    ThetaVector,
    grad_alpha_kappa,
    grad_g,
    grad_h,
    kappa,
    kappa_prime_r,
    ladder_g,
    ladder_h,
    levy_mean,
    npc_check,
    tail,
)
from ruinband.ruin.python.ops.renewal_oracle import (
    GridFunction,
    finite_diff_dot_psi,
    solve_dot_psi,
    solve_psi,
)
from ruinband.ruin.python.ops.simulate import (
    ObservationSet,
    read_observations,
    simulate,
    simulate_classical,
    simulate_gamma_jumps,
    simulate_perturbed,
    write_observations,
)
from ruinband.ruin.python.ops.special_ops import exp_integral_e1
