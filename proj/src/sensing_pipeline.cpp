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

#include "isacq/sensing_pipeline.hpp"

namespace isacq
{

    cx_vec combine(const cx_mat &a, const cx_vec &y_vec)
    {
        uword n_rx = a.n_cols;
        if (y_vec.n_elem % n_rx != 0)
            throw DimensionMismatch("combine: y length not divisible by n_rx");
        uword n_l = y_vec.n_elem / n_rx;
        cx_mat y = arma::reshape(y_vec, n_rx, n_l);
        return arma::vectorise(a * y);
    }

    cx_vec estimate(const cx_mat &b, const cx_vec &z)
    {
        if (b.n_cols != z.n_elem)
            throw DimensionMismatch("estimate: B column count must equal z length");
        return b * z;
    }

    TrialOutcome run_frame(const ScenarioConfig &cfg, const CombinerDesign &design,
                           const FrameDraw &frame, RngStream &dither_rng)
    {
        if (design.a.n_cols != cfg.n_rx)
            throw DimensionMismatch("run_frame: design does not match scenario dimensions");

        cx_vec u = combine(design.a, frame.y);
        uword clipped = 0;
        cx_vec z = quantize_vector(u, design.quant, dither_rng, &clipped);
        cx_mat b = build_B(design.a, frame.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2, design.gamma,
                           design.quant.k_dither, design.quant.m_levels);
        cx_vec g_hat = estimate(b, z);

        TrialOutcome out;
        out.squared_error = arma::accu(arma::square(arma::abs(g_hat - frame.g)));
        out.n_params = cfg.n_tx * cfg.n_rx;
        out.strategy = design.strategy == Strategy::DD ? "dd" : "di";
        out.overloaded_fraction = double(clipped) / double(2 * u.n_elem);
        return out;
    }

    TrialOutcome baseline_no_quant(const ScenarioConfig &cfg, const FrameDraw &frame)
    {
        cx_mat eye = arma::eye<cx_mat>(cfg.n_rx, cfg.n_rx);
        cx_mat b = build_B(eye, frame.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2,
                           /*gamma=*/0.0, /*k_dither=*/0, /*m_levels=*/2);
        cx_vec g_hat = estimate(b, frame.y);

        TrialOutcome out;
        out.squared_error = arma::accu(arma::square(arma::abs(g_hat - frame.g)));
        out.n_params = cfg.n_tx * cfg.n_rx;
        out.strategy = "no-quant";
        return out;
    }

    TrialOutcome baseline_digital_only(const ScenarioConfig &cfg, const FrameDraw &frame,
                                       double rate, uword k_dither, double eta,
                                       BudgetConvention convention, RngStream &dither_rng)
    {
        uword m = resolution_from_budget(rate, cfg.n_rx, cfg.n_snapshots, cfg.n_rx, convention);
        double kap = kappa(eta, k_dither, m);
        double smax2 = sigma_max_sq(cfg.r_theta(), cfg.r_b, cfg.sigma_w2);

        // A = I, so the combined Gram matrix is R_A itself
        QuantizerSpec spec;
        spec.m_levels = m;
        spec.k_dither = k_dither;
        spec.eta = eta;
        spec.p_tilde = cfg.n_rx;
        spec.gamma = support_from_combiner(kap, smax2, cfg.r_a);

        uword clipped = 0;
        cx_vec z = quantize_vector(frame.y, spec, dither_rng, &clipped);
        cx_mat eye = arma::eye<cx_mat>(cfg.n_rx, cfg.n_rx);
        cx_mat b = build_B(eye, frame.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2, spec.gamma,
                           k_dither, m);
        cx_vec g_hat = estimate(b, z);

        TrialOutcome out;
        out.squared_error = arma::accu(arma::square(arma::abs(g_hat - frame.g)));
        out.n_params = cfg.n_tx * cfg.n_rx;
        out.strategy = "digital-only";
        out.overloaded_fraction = double(clipped) / double(2 * frame.y.n_elem);
        return out;
    }

} // namespace isacq
