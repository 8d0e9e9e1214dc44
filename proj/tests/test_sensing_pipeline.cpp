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

#include <catch2/catch_amalgamated.hpp>

#include "isacq/sensing_pipeline.hpp"
#include "test_util.hpp"

using namespace isacq;
using test::random_complex;

namespace
{

    ScenarioConfig pipeline_scenario(std::uint64_t seed)
    {
        ScenarioConfig cfg;
        cfg.n_tx = 2;
        cfg.n_rx = 4;
        cfg.n_snapshots = 8;
        cfg.r_a = arma::conv_to<cx_mat>::from(jakes_correlation(4, 0.8));
        cfg.r_b = arma::conv_to<cx_mat>::from(jakes_correlation(2, 1.2));
        cfg.precoder = arma::eye<cx_mat>(2, 2);
        cfg.sigma_w2 = 1e-3;
        cfg.master_seed = seed;
        cfg.validate();
        return cfg;
    }

    QuantizerSpec spec_of(uword m, uword k, double eta, uword p_tilde)
    {
        QuantizerSpec q;
        q.m_levels = m;
        q.k_dither = k;
        q.eta = eta;
        q.p_tilde = p_tilde;
        return q;
    }

} // namespace

TEST_CASE("combine applies A snapshot by snapshot", "[sensing_pipeline]")
{
    RngStream rng(51, "combine");
    uword n_rx = 4, n_l = 5, p_tilde = 2;
    cx_vec y = arma::vectorise(random_complex(n_rx, n_l, rng));
    cx_mat a = random_complex(p_tilde, n_rx, rng);

    SECTION("identity combiner is a pass-through")
    {
        CHECK(arma::abs(combine(arma::eye<cx_mat>(n_rx, n_rx), y) - y).max() == 0.0);
    }

    SECTION("matches the explicit Kronecker operator")
    {
        cx_vec u = combine(a, y);
        cx_vec u_kron = isacq::kron(arma::eye<cx_mat>(n_l, n_l), a) * y;
        CHECK(arma::abs(u - u_kron).max() < 1e-12);
    }

    SECTION("single snapshot is a plain matrix-vector product")
    {
        cx_vec y1 = y.head(n_rx);
        CHECK(arma::abs(combine(a, y1) - a * y1).max() < 1e-15);
    }

    SECTION("length mismatch is rejected")
    {
        CHECK_THROWS_AS(combine(a, y.head(n_rx * n_l - 1)), DimensionMismatch);
    }
}

TEST_CASE("estimate is the linear map", "[sensing_pipeline]")
{
    RngStream rng(52, "estimate");
    cx_mat b = random_complex(6, 8, rng);
    cx_vec z = arma::vectorise(random_complex(8, 1, rng));
    CHECK(arma::abs(estimate(b, z) - b * z).max() == 0.0);
    CHECK(arma::abs(estimate(arma::zeros<cx_mat>(6, 8), z)).max() == 0.0);
    CHECK(arma::abs(estimate(b, arma::zeros<cx_vec>(8))).max() == 0.0);
    CHECK_THROWS_AS(estimate(b, z.head(7)), DimensionMismatch);
}

TEST_CASE("run_frame is deterministic", "[sensing_pipeline]")
{
    ScenarioConfig cfg = pipeline_scenario(61);
    FrameDraw f = draw_frame(cfg, 3);
    CombinerDesign d = design_dd(cfg, f.theta, spec_of(8, 2, 3.0, 2));

    RngStream r1(cfg.master_seed, "dither", 3);
    RngStream r2(cfg.master_seed, "dither", 3);
    TrialOutcome a = run_frame(cfg, d, f, r1);
    TrialOutcome b = run_frame(cfg, d, f, r2);
    CHECK(a.squared_error == b.squared_error);
    CHECK(a.overloaded_fraction == b.overloaded_fraction);
    CHECK(a.n_params == cfg.n_tx * cfg.n_rx);
    CHECK(a.strategy == "dd");
}

TEST_CASE("identity quantization reproduces the linear estimate", "[sensing_pipeline]")
{
    ScenarioConfig cfg = pipeline_scenario(62);
    FrameDraw f = draw_frame(cfg, 0);
    CombinerDesign d = design_dd(cfg, f.theta, spec_of(8, 2, 3.0, 3));

    // bypass the ADCs: z = u, with the quantization-noise-free estimator
    cx_mat b0 = build_B(d.a, f.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2, 0.0, 0, 2);
    cx_vec u = combine(d.a, f.y);
    cx_vec g_hat = estimate(b0, u);
    cx_vec direct = b0 * (isacq::kron(arma::eye<cx_mat>(cfg.n_snapshots, cfg.n_snapshots), d.a) *
                          f.y);
    CHECK(arma::abs(g_hat - direct).max() < 1e-12);

    // and its Monte Carlo MSE matches the zero-noise limit of the prediction
    double predicted = predicted_mse(d.a, f.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2, 0.0, 0, 2);
    uword n_mc = 20000;
    double acc = 0.0, acc2 = 0.0;
    for (uword t = 0; t < n_mc; t++)
    {
        FrameDraw ft = draw_frame(cfg, t + 1);
        ft.theta = f.theta;
        ft.y = received_vector(ft.theta, ft.g, ft.noise);
        cx_vec gh = estimate(b0, combine(d.a, ft.y));
        double v = arma::accu(arma::square(arma::abs(gh - ft.g))) / double(cfg.n_tx * cfg.n_rx);
        acc += v;
        acc2 += v * v;
    }
    double mean = acc / double(n_mc);
    double sd = std::sqrt((acc2 / double(n_mc) - mean * mean) / double(n_mc - 1));
    CHECK(std::abs(mean - predicted) < 3.0 * sd);
}

TEST_CASE("quantized frames track the closed-form MSE", "[sensing_pipeline]")
{
    ScenarioConfig cfg = pipeline_scenario(63);
    FrameDraw f = draw_frame(cfg, 0);
    // eta = 4 keeps saturation negligible, k = 2 makes the noise model exact
    QuantizerSpec q = spec_of(8, 2, 4.0, 2);
    CombinerDesign d = design_dd(cfg, f.theta, q);
    double predicted = predicted_mse(d.a, f.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2, d.gamma,
                                     q.k_dither, q.m_levels);

    uword n_mc = 20000;
    double acc = 0.0, acc2 = 0.0;
    for (uword t = 0; t < n_mc; t++)
    {
        FrameDraw ft = draw_frame(cfg, t + 1);
        ft.theta = f.theta;
        ft.y = received_vector(ft.theta, ft.g, ft.noise);
        RngStream dither(cfg.master_seed, "dither", t);
        TrialOutcome out = run_frame(cfg, d, ft, dither);
        double v = out.squared_error / double(out.n_params);
        acc += v;
        acc2 += v * v;
    }
    double mean = acc / double(n_mc);
    double sd = std::sqrt((acc2 / double(n_mc) - mean * mean) / double(n_mc - 1));
    CHECK(std::abs(mean - predicted) < 3.0 * sd);
}

TEST_CASE("no-quantization baseline recovers an invertible noiseless system",
          "[sensing_pipeline]")
{
    ScenarioConfig cfg;
    cfg.n_tx = 2;
    cfg.n_rx = 3;
    cfg.n_snapshots = 2; // L = n_tx
    cfg.r_a = arma::eye<cx_mat>(3, 3);
    cfg.r_b = arma::eye<cx_mat>(2, 2);
    cfg.precoder = arma::eye<cx_mat>(2, 2);
    cfg.sigma_w2 = 1e-13;
    cfg.master_seed = 64;

    FrameDraw f = draw_frame(cfg, 0);
    TrialOutcome out = baseline_no_quant(cfg, f);
    CHECK(out.squared_error / double(out.n_params) < 1e-9);
    CHECK(out.strategy == "no-quant");
}

TEST_CASE("strategy dominance on matched frames", "[sensing_pipeline]")
{
    ScenarioConfig cfg = pipeline_scenario(65);
    double rate = 6.0;
    uword n_trials = 400;

    double acc_nq = 0.0, acc_dd = 0.0, acc_dig = 0.0;
    for (uword t = 0; t < n_trials; t++)
    {
        FrameDraw f = draw_frame(cfg, t);

        acc_nq += baseline_no_quant(cfg, f).squared_error;

        uword m = resolution_from_budget(rate, cfg.n_rx, cfg.n_snapshots, cfg.n_rx,
                                         BudgetConvention::PerRealDim);
        CombinerDesign d = design_dd(cfg, f.theta, spec_of(m, 0, 2.0, cfg.n_rx));
        RngStream r_dd(cfg.master_seed, "dd-dither", t);
        acc_dd += run_frame(cfg, d, f, r_dd).squared_error;

        RngStream r_dig(cfg.master_seed, "dig-dither", t);
        acc_dig += baseline_digital_only(cfg, f, rate, 0, 2.0, BudgetConvention::PerRealDim,
                                         r_dig)
                       .squared_error;
    }
    // no-quant <= dd <= digital-only, with slack for Monte Carlo noise
    CHECK(acc_nq <= acc_dd * 1.02);
    CHECK(acc_dd <= acc_dig * 1.05);
}

TEST_CASE("digital-only support and resolution", "[sensing_pipeline]")
{
    ScenarioConfig cfg = pipeline_scenario(66);

    // unit-diagonal R_A: gamma^2 = kappa * sigma_max^2
    uword m = resolution_from_budget(4.0, cfg.n_rx, cfg.n_snapshots, cfg.n_rx,
                                     BudgetConvention::PerRealDim);
    CHECK(m == 4);
    double kap = kappa(2.0, 0, m);
    double smax2 = sigma_max_sq(cfg.r_theta(), cfg.r_b, cfg.sigma_w2);
    double gamma = support_from_combiner(kap, smax2, cfg.r_a);
    CHECK(gamma == Catch::Approx(std::sqrt(kap * smax2)));

    FrameDraw f = draw_frame(cfg, 0);
    RngStream rng(cfg.master_seed, "dither", 0);
    TrialOutcome out = baseline_digital_only(cfg, f, 4.0, 0, 2.0,
                                             BudgetConvention::PerRealDim, rng);
    CHECK(out.strategy == "digital-only");
    CHECK(out.squared_error > 0.0);
}

TEST_CASE("overloaded fraction sits in the Gaussian tail band", "[sensing_pipeline]")
{
    ScenarioConfig cfg = pipeline_scenario(67);
    uword p_tilde = 2;
    QuantizerSpec q = spec_of(16, 0, 2.0, p_tilde);
    CombinerDesign d = design_dd(cfg, draw_frame(cfg, 0).theta, q);

    // support sized as two per-real-dimension standard deviations of the
    // combined observation, so each real dimension clips with the 4.6% tail
    double entry_var = d.sigma_max2 / double(p_tilde);
    d.gamma = 2.0 * std::sqrt(entry_var / 2.0);
    d.quant.gamma = d.gamma;

    double acc = 0.0;
    uword n_trials = 200;
    for (uword t = 0; t < n_trials; t++)
    {
        FrameDraw f = draw_frame(cfg, t);
        RngStream rng(cfg.master_seed, "ovl-dither", t);
        acc += run_frame(cfg, d, f, rng).overloaded_fraction;
    }
    double frac = acc / double(n_trials);
    CHECK(frac > 0.02);
    CHECK(frac < 0.08);
}
