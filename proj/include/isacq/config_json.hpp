// SPDX-License-Identifier: Apache-2.0
//
// isacq - task-based quantizer design and simulation for MIMO ISAC sensing
// Copyright (C) 2026 The isacq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef isacq_config_json_H
#define isacq_config_json_H

#include <string>

#include <json.hpp>

#include "isacq/combiner_design.hpp"
#include "isacq/sweep.hpp"

// JSON wire formats.
//
// Scenario document:
//   {"n_tx": 6, "n_rx": 20, "n_snapshots": 40, "sigma_w2": 1e-3,
//    "correlation": {"model": "jakes", "rx_spacing": <num>, "tx_spacing": <num>}
//                 | {"model": "explicit", "r_a": <matrix>, "r_b": <matrix>},
//    "precoder": "identity" | <matrix>,
//    "master_seed": 1}
// Complex matrices are nested arrays of [re, im] pairs, one inner array per row.
//
// Sweep document: {"scenario": <scenario>, "sweep": {"strategies": [...],
//    "rates": [...], "p_tildes": [...], "k_dithers": [...], "eta": <num>,
//    "n_trials": <int>, "n_saa": <int>,
//    "convention": "per-real-dim" | "paper-literal", "threads": <int>}}
// All sweep fields are optional.

namespace isacq
{

    nlohmann::json matrix_to_json(const cx_mat &m);
    cx_mat matrix_from_json(const nlohmann::json &j);

    ScenarioConfig scenario_from_json(const nlohmann::json &j);
    nlohmann::json scenario_to_json(const ScenarioConfig &cfg);

    // Accepts either a bare scenario document or {"scenario":..., "sweep":...}
    SweepSpec sweep_from_json(const nlohmann::json &j);

    nlohmann::json design_to_json(const CombinerDesign &d);

    BudgetConvention convention_from_string(const std::string &name);
    std::string to_string(BudgetConvention c);

} // namespace isacq

#endif
