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
"""Ruinband: parametric inference for ruin probabilities of Levy surplus models.

It covers the whole workflow around the ultimate ruin probability of an
insurance surplus driven by a Levy process: simulation of claims and surplus
paths, parameter estimation, the adjustment coefficient, the Cramer
approximation and its parameter gradients, a numerical renewal-equation
oracle, and delta-method confidence intervals checked by Monte Carlo.
"""
__all__ = ['ruin']

from ruinband.utils.ensure_tf_install import _check_tf_version
from ruinband.version import __version__

_check_tf_version()

from ruinband import ruin
