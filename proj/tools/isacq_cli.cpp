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

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "isacq/config_json.hpp"
#include "isacq/sweep.hpp"

namespace
{

    constexpr int kExitOk = 0;
    constexpr int kExitConfig = 1;
    constexpr int kExitInfeasible = 2;
    constexpr int kExitNumerical = 3;

    struct CommonOpts
    {
        std::string config_path;
        std::string out_path;
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> trials;
        std::optional<std::uint64_t> saa_samples;
        std::optional<std::string> convention;
        std::optional<unsigned> threads;
    };

    void add_common(CLI::App *cmd, CommonOpts &o, bool config_required)
    {
        auto *cfg = cmd->add_option("--config", o.config_path, "scenario/sweep JSON file");
        if (config_required)
            cfg->required();
        cmd->add_option("--out", o.out_path, "output file (default: stdout)");
        cmd->add_option("--seed", o.seed, "override the scenario master seed");
        cmd->add_option("--trials", o.trials, "Monte Carlo trials per grid point");
        cmd->add_option("--saa-samples", o.saa_samples, "signal samples for the DI design");
        cmd->add_option("--convention", o.convention,
                        "bit-budget convention: per-real-dim | paper-literal");
        cmd->add_option("--threads", o.threads, "worker threads per grid point");
    }

    isacq::SweepSpec load_sweep(const CommonOpts &o)
    {
        std::ifstream in(o.config_path);
        if (!in)
            throw std::invalid_argument("cannot open config file '" + o.config_path + "'");
        nlohmann::json j = nlohmann::json::parse(in);
        isacq::SweepSpec spec = isacq::sweep_from_json(j);
        if (o.seed)
            spec.scenario.master_seed = *o.seed;
        if (o.trials)
            spec.n_trials = *o.trials;
        if (o.saa_samples)
            spec.n_saa = *o.saa_samples;
        if (o.convention)
            spec.convention = isacq::convention_from_string(*o.convention);
        if (o.threads)
            spec.n_threads = *o.threads;
        return spec;
    }

    void emit(const CommonOpts &o, const std::string &text)
    {
        if (o.out_path.empty())
        {
            std::cout << text;
            return;
        }
        std::ofstream out(o.out_path, std::ios::binary);
        if (!out)
            throw std::invalid_argument("cannot open output file '" + o.out_path + "'");
        out << text;
    }

    int run_design(const CommonOpts &o, const std::string &strategy, double rate,
                   isacq::uword p_tilde, isacq::uword k_dither, double eta)
    {
        isacq::SweepSpec spec = load_sweep(o);
        const isacq::ScenarioConfig &cfg = spec.scenario;

        isacq::QuantizerSpec quant;
        quant.m_levels = isacq::resolution_from_budget(rate, cfg.n_rx, cfg.n_snapshots, p_tilde,
                                                       spec.convention);
        quant.k_dither = k_dither;
        quant.eta = eta;
        quant.p_tilde = p_tilde;

        isacq::CombinerDesign design;
        if (strategy == "dd")
        {
            // one signal realization drawn from the scenario seed
            isacq::FrameDraw frame = isacq::draw_frame(cfg, 0);
            design = isacq::design_dd(cfg, frame.theta, quant);
        }
        else if (strategy == "di")
        {
            isacq::RngStream rng(cfg.master_seed, "saa");
            design = isacq::design_di(cfg, quant, spec.n_saa, rng);
        }
        else
            throw std::invalid_argument("design strategy must be dd or di");

        emit(o, isacq::design_to_json(design).dump(2) + "\n");
        return kExitOk;
    }

    // Small-scale invariant checks, usable as a smoke test of an installed build
    int run_validate(std::uint64_t seed)
    {
        using namespace isacq;
        int failures = 0;
        auto check = [&](const char *name, bool ok) {
            std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
            if (!ok)
                failures++;
        };

        RngStream rng(seed, "validate");
        auto random_cx = [&](uword r, uword c) {
            cx_mat m(r, c);
            for (uword j = 0; j < c; j++)
                for (uword i = 0; i < r; i++)
                    m(i, j) = rng.complex_gaussian();
            return m;
        };

        {
            cx_mat a = random_cx(2, 2), b = random_cx(2, 2), c = random_cx(2, 2),
                   d = random_cx(2, 2);
            double err = arma::abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)).max();
            check("kron mixed-product identity", err < 1e-12);
        }
        {
            cx_mat m = random_cx(5, 5);
            m = m * m.t();
            HermitianEig e = hermitian_eig(m);
            double err = arma::norm(e.vectors * arma::diagmat(e.values) * e.vectors.t() - m,
                                    "fro") /
                         arma::norm(m, "fro");
            check("hermitian_eig reconstruction", err < 1e-9);
        }
        {
            cx_mat u = dft_matrix(8);
            double err = arma::abs(u * u.t() - arma::eye<cx_mat>(8, 8)).max();
            check("dft unitarity", err < 1e-12);
        }
        {
            QuantizerSpec spec{4, 0, 2.0, 1.0, 1};
            check("quantizer level grid", uniform_quantize(0.1, 1.0, 4) == 0.25 &&
                                              uniform_quantize(5.0, 1.0, 4) == 0.75);
        }
        {
            vec lambda_a{3.0, 2.0, 1.0};
            std::vector<SpectrumWeight> w{{1.0, 5.0}};
            vec p = solve_power_allocation(lambda_a, w, 0.1, 0.5);
            double res = allocation_kkt_residual(p, lambda_a, w, 0.1, 0.5);
            check("water-filling KKT residual", res <= 1e-8 &&
                                                    std::abs(arma::accu(p) - 1.0) <= 1e-9);
        }
        {
            // tiny end-to-end: empirical MSE tracks the closed-form prediction
            ScenarioConfig cfg;
            cfg.n_tx = 2;
            cfg.n_rx = 3;
            cfg.n_snapshots = 4;
            cfg.r_a = arma::conv_to<cx_mat>::from(jakes_correlation(3, 0.6));
            cfg.r_b = arma::conv_to<cx_mat>::from(jakes_correlation(2, 0.9));
            cfg.precoder = arma::eye<cx_mat>(2, 2);
            cfg.sigma_w2 = 1e-2;
            cfg.master_seed = seed;
            QuantizerSpec quant;
            quant.m_levels = 8;
            quant.k_dither = 2;
            quant.eta = 4.0;
            quant.p_tilde = 2;
            FrameDraw f0 = draw_frame(cfg, 0);
            CombinerDesign d = design_dd(cfg, f0.theta, quant);
            double pred = predicted_mse(d.a, f0.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2, d.gamma,
                                        quant.k_dither, quant.m_levels);
            uword n_mc = 4000;
            double acc = 0.0, acc2 = 0.0;
            for (uword t = 0; t < n_mc; t++)
            {
                FrameDraw f = draw_frame(cfg, t + 1);
                f.theta = f0.theta; // hold the signal fixed
                f.y = received_vector(f.theta, f.g, f.noise);
                RngStream dither(cfg.master_seed, "validate-dither", t);
                TrialOutcome out = run_frame(cfg, d, f, dither);
                double v = out.squared_error / double(out.n_params);
                acc += v;
                acc2 += v * v;
            }
            double mean = acc / double(n_mc);
            double sd = std::sqrt((acc2 / double(n_mc) - mean * mean) / double(n_mc - 1));
            check("closed-form MSE consistency", std::abs(mean - pred) < 4.0 * sd);
        }

        std::cout << (failures == 0 ? "validate: all checks passed\n"
                                    : "validate: FAILURES detected\n");
        return failures == 0 ? kExitOk : kExitNumerical;
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"task-based quantizer design and Monte Carlo simulation "
                 "for MIMO ISAC sensing receivers"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto *design = app.add_subcommand("design", "emit an optimized combiner design as JSON");
    std::string strategy = "di";
    double rate = 4.0;
    isacq::uword p_tilde = 1, k_dither = 0;
    double eta = 2.0;
    add_common(design, opts, true);
    design->add_option("--strategy", strategy, "dd | di")->required();
    design->add_option("--rate", rate, "quantization rate R")->required();
    design->add_option("--ptilde", p_tilde, "number of complex ADC chains")->required();
    design->add_option("--kd", k_dither, "number of dither signals");
    design->add_option("--eta", eta, "support multiple");

    auto *ratio = app.add_subcommand("sweep-ratio", "MSE vs combining ratio, CSV output");
    add_common(ratio, opts, true);

    auto *rate_cmd = app.add_subcommand("sweep-rate", "MSE vs quantization rate, CSV output");
    add_common(rate_cmd, opts, true);

    auto *validate = app.add_subcommand("validate", "run small-scale invariant checks");
    std::uint64_t validate_seed = 1;
    validate->add_option("--seed", validate_seed, "seed for the checks");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (design->parsed())
            return run_design(opts, strategy, rate, p_tilde, k_dither, eta);
        if (ratio->parsed())
        {
            emit(opts, isacq::csv_string(isacq::sweep_ratio(load_sweep(opts))));
            return kExitOk;
        }
        if (rate_cmd->parsed())
        {
            emit(opts, isacq::csv_string(isacq::sweep_rate(load_sweep(opts))));
            return kExitOk;
        }
        if (validate->parsed())
            return run_validate(validate_seed);
    }
    catch (const isacq::InfeasibleError &e)
    {
        std::cerr << "infeasible request: " << e.what() << "\n";
        return kExitInfeasible;
    }
    catch (const isacq::ResolutionTooLowError &e)
    {
        std::cerr << "infeasible request: " << e.what() << "\n";
        return kExitInfeasible;
    }
    catch (const isacq::DimensionMismatch &e)
    {
        std::cerr << "infeasible request: " << e.what() << "\n";
        return kExitInfeasible;
    }
    catch (const nlohmann::json::exception &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
