# Copyright 2026 The CAFE Simulator Authors
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
"""Context aware fidelity estimation (CAFE) simulator."""

from ._core import (
    NUM_CLIFFORDS_2Q,
    ConfigError,
    avg_gate_fidelity,
    budget,
    clifford_element,
    clifford_index,
    config_hash,
    cz,
    fit,
    fsim,
    fsim_delta,
    model_1q,
    model_cz,
    prep_state,
    run_cli,
    simulate,
    verify_2design,
    x_delta,
)

__version__ = "0.1.0"

__all__ = [
    "NUM_CLIFFORDS_2Q",
    "ConfigError",
    "avg_gate_fidelity",
    "budget",
    "clifford_element",
    "clifford_index",
    "config_hash",
    "cz",
    "fit",
    "fsim",
    "fsim_delta",
    "model_1q",
    "model_cz",
    "prep_state",
    "run_cli",
    "simulate",
    "verify_2design",
    "x_delta",
]
