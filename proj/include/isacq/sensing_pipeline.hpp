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

#ifndef isacq_sensing_pipeline_H
#define isacq_sensing_pipeline_H

#include <string>

#include "isacq/channel_model.hpp"
#include "isacq/combiner_design.hpp"
#include "isacq/quantizer.hpp"

// Per-frame receiver execution (combine -> quantize -> estimate) and the
// baseline receivers used for comparison.

namespace isacq
{

    struct TrialOutcome
    {
        double squared_error = 0.0;        // ||g_hat - g||^2
        uword n_params = 0;                // n_tx * n_rx; per-trial MSE is squared_error / n_params
        std::string strategy;              // "dd" | "di" | "digital-only" | "no-quant"
        double overloaded_fraction = 0.0;  // saturated real dimensions / (2 L p_tilde)
    };

    // u = (I_L (x) A) y applied snapshot-by-snapshot, never materializing the
    // Kronecker product.
    cx_vec combine(const cx_mat &a, const cx_vec &y_vec);

    // g_hat = B z
    cx_vec estimate(const cx_mat &b, const cx_vec &z);

    // Full quantized receive chain for one frame; the digital matrix B is
    // rebuilt from the frame's signal realization.
    TrialOutcome run_frame(const ScenarioConfig &cfg, const CombinerDesign &design,
                           const FrameDraw &frame, RngStream &dither_rng);

    // Linear MMSE estimate from the unquantized observation (A = I, zero
    // quantization noise; pseudo-inverse where the covariance is singular).
    TrialOutcome baseline_no_quant(const ScenarioConfig &cfg, const FrameDraw &frame);

    // Task-ignorant quantization: A = I_{n_rx}, the whole bit budget spread
    // over n_rx ADC chains, support sized from the raw antenna powers.
    TrialOutcome baseline_digital_only(const ScenarioConfig &cfg, const FrameDraw &frame,
                                       double rate, uword k_dither, double eta,
                                       BudgetConvention convention, RngStream &dither_rng);

} // namespace isacq

#endif
