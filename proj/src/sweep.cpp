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

#include "isacq/sweep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

namespace isacq
{

    std::string to_string(SweepStrategy s)
    {
        switch (s)
        {
        case SweepStrategy::DD:
            return "dd";
        case SweepStrategy::DI:
            return "di";
        case SweepStrategy::DigitalOnly:
            return "digital-only";
        default:
            return "no-quant";
        }
    }

    SweepStrategy sweep_strategy_from_string(const std::string &name)
    {
        if (name == "dd")
            return SweepStrategy::DD;
        if (name == "di")
            return SweepStrategy::DI;
        if (name == "digital-only")
            return SweepStrategy::DigitalOnly;
        if (name == "no-quant")
            return SweepStrategy::NoQuant;
        throw std::invalid_argument("unknown strategy '" + name + "'");
    }

    // Stable key for per-point substreams (dither, SAA)
    static std::uint64_t point_key(SweepStrategy strategy, double rate, uword k_dither,
                                   uword p_tilde)
    {
        auto mix = [](std::uint64_t z) {
            z ^= z >> 30;
            z *= 0xbf58476d1ce4e5b9ULL;
            z ^= z >> 27;
            z *= 0x94d049bb133111ebULL;
            z ^= z >> 31;
            return z;
        };
        std::uint64_t k = mix(std::uint64_t(strategy) + 1);
        k = mix(k ^ std::bit_cast<std::uint64_t>(rate));
        k = mix(k ^ k_dither);
        k = mix(k ^ p_tilde);
        return k;
    }

    namespace
    {

        struct PointAccum
        {
            std::vector<double> mse;       // per-trial squared error / n_params
            std::vector<double> predicted; // per-trial closed-form MSE
        };

        // Statistics reduced in trial-index order regardless of how trials were
        // scheduled, so threaded and serial runs agree bit-for-bit.
        void reduce_stats(const PointAccum &acc, SweepRow &row)
        {
            uword n = acc.mse.size();
            double mean = 0.0;
            for (double v : acc.mse)
                mean += v;
            mean /= double(n);
            double ss = 0.0;
            for (double v : acc.mse)
                ss += (v - mean) * (v - mean);
            double stderr_v = n > 1 ? std::sqrt(ss / double(n - 1) / double(n)) : 0.0;
            double pred = 0.0;
            for (double v : acc.predicted)
                pred += v;
            pred /= double(n);

            row.mse_empirical = mean;
            row.mse_empirical_stderr = stderr_v;
            row.mse_predicted_mean = pred;
            row.n_trials = n;
        }

        template <typename Fn>
        void for_each_trial(uword n_trials, unsigned n_threads, Fn &&body)
        {
            if (n_threads <= 1)
            {
                for (uword t = 0; t < n_trials; t++)
                    body(t);
                return;
            }
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < n_threads; w++)
                pool.emplace_back([&, w]() {
                    for (uword t = w; t < n_trials; t += n_threads)
                        body(t);
                });
            for (auto &th : pool)
                th.join();
        }

    } // namespace

    SweepRow run_point(const SweepSpec &spec, SweepStrategy strategy, double rate, uword k_dither,
                       uword p_tilde)
    {
        if (spec.n_trials < 1)
            throw std::invalid_argument("run_point: n_trials must be >= 1");
        const ScenarioConfig &cfg = spec.scenario;

        SweepRow row;
        row.strategy = to_string(strategy);
        row.rate = strategy == SweepStrategy::NoQuant ? 0.0 : rate;
        row.k_dither = strategy == SweepStrategy::NoQuant ? 0 : k_dither;
        row.p_tilde = strategy == SweepStrategy::DD || strategy == SweepStrategy::DI ? p_tilde
                                                                                     : cfg.n_rx;
        row.combining_ratio = double(row.p_tilde) / double(cfg.n_rx);

        std::uint64_t key = point_key(strategy, row.rate, row.k_dither, row.p_tilde);

        // Feasibility gate for the quantized strategies
        QuantizerSpec quant;
        if (strategy != SweepStrategy::NoQuant)
        {
            try
            {
                quant.m_levels = resolution_from_budget(rate, cfg.n_rx, cfg.n_snapshots,
                                                        row.p_tilde, spec.convention);
                row.m_levels = quant.m_levels;
            }
            catch (const ResolutionTooLowError &)
            {
                row.skipped_reason = "ResolutionTooLow";
                return row;
            }
            quant.k_dither = k_dither;
            quant.eta = spec.eta;
            quant.p_tilde = row.p_tilde;
            try
            {
                kappa(spec.eta, k_dither, quant.m_levels);
            }
            catch (const InfeasibleError &)
            {
                row.skipped_reason = "Infeasible-kappa";
                return row;
            }
        }

        // DI: one design per point, reused by every trial
        CombinerDesign di_design;
        if (strategy == SweepStrategy::DI)
        {
            RngStream saa_rng(cfg.master_seed, "saa", key);
            di_design = design_di(cfg, quant, spec.n_saa, saa_rng);
            row.gamma = di_design.gamma;
        }

        // Supports are trial-independent (they use the expected signal power),
        // so the row-level gamma is known before any trial runs
        double dig_gamma = 0.0;
        if (strategy == SweepStrategy::DigitalOnly)
        {
            double kap = kappa(spec.eta, k_dither, quant.m_levels);
            double smax2 = sigma_max_sq(cfg.r_theta(), cfg.r_b, cfg.sigma_w2);
            dig_gamma = support_from_combiner(kap, smax2, cfg.r_a);
            row.gamma = dig_gamma;
        }
        if (strategy == SweepStrategy::DD)
        {
            double kap = kappa(spec.eta, k_dither, quant.m_levels);
            double smax2 = sigma_max_sq(cfg.r_theta(), cfg.r_b, cfg.sigma_w2);
            row.gamma = std::sqrt(kap / double(row.p_tilde) * smax2);
        }

        PointAccum acc;
        acc.mse.resize(spec.n_trials);
        acc.predicted.resize(spec.n_trials);
        cx_mat eye = arma::eye<cx_mat>(cfg.n_rx, cfg.n_rx);

        for_each_trial(spec.n_trials, spec.n_threads, [&](uword t) {
            FrameDraw frame = draw_frame(cfg, t);
            RngStream dither(cfg.master_seed, "dither", key, t);
            TrialOutcome outcome;
            double predicted = 0.0;
            switch (strategy)
            {
            case SweepStrategy::NoQuant:
                outcome = baseline_no_quant(cfg, frame);
                predicted = predicted_mse(eye, frame.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2, 0.0,
                                          0, 2);
                break;
            case SweepStrategy::DigitalOnly:
                outcome = baseline_digital_only(cfg, frame, rate, k_dither, spec.eta,
                                                spec.convention, dither);
                predicted = predicted_mse(eye, frame.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2,
                                          dig_gamma, k_dither, quant.m_levels);
                break;
            case SweepStrategy::DD:
            {
                CombinerDesign d = design_dd(cfg, frame.theta, quant);
                outcome = run_frame(cfg, d, frame, dither);
                predicted = predicted_mse(d.a, frame.theta, cfg.r_a, cfg.r_b, cfg.sigma_w2,
                                          d.gamma, k_dither, quant.m_levels);
                break;
            }
            case SweepStrategy::DI:
                outcome = run_frame(cfg, di_design, frame, dither);
                predicted = predicted_mse(di_design.a, frame.theta, cfg.r_a, cfg.r_b,
                                          cfg.sigma_w2, di_design.gamma, k_dither,
                                          quant.m_levels);
                break;
            }
            acc.mse[t] = outcome.squared_error / double(outcome.n_params);
            acc.predicted[t] = predicted;
        });

        reduce_stats(acc, row);
        return row;
    }

    static void sort_rows(SweepResult &result)
    {
        std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow &a, const SweepRow &b) {
            return std::tie(a.strategy, a.rate, a.k_dither, a.p_tilde) <
                   std::tie(b.strategy, b.rate, b.k_dither, b.p_tilde);
        });
    }

    static SweepResult run_grid(const SweepSpec &spec, const std::vector<double> &rates,
                                const std::vector<uword> &p_tildes)
    {
        SweepResult result;
        bool no_quant_done = false;
        for (SweepStrategy strategy : spec.strategies)
        {
            if (strategy == SweepStrategy::NoQuant)
            {
                if (!no_quant_done)
                {
                    result.rows.push_back(run_point(spec, strategy, 0.0, 0, spec.scenario.n_rx));
                    no_quant_done = true;
                }
                continue;
            }
            for (double rate : rates)
                for (uword k : spec.k_dithers)
                {
                    if (strategy == SweepStrategy::DigitalOnly)
                    {
                        result.rows.push_back(
                            run_point(spec, strategy, rate, k, spec.scenario.n_rx));
                        continue;
                    }
                    for (uword pt : p_tildes)
                        result.rows.push_back(run_point(spec, strategy, rate, k, pt));
                }
        }
        sort_rows(result);
        return result;
    }

    SweepResult sweep_ratio(const SweepSpec &spec)
    {
        std::vector<uword> p_tildes = spec.p_tildes;
        if (p_tildes.empty())
            for (uword pt = 1; pt <= spec.scenario.n_rx; pt++)
                p_tildes.push_back(pt);
        std::vector<double> rates = spec.rates.empty() ? std::vector<double>{2.0, 4.0} : spec.rates;
        return run_grid(spec, rates, p_tildes);
    }

    SweepResult sweep_rate(const SweepSpec &spec)
    {
        std::vector<double> rates = spec.rates;
        if (rates.empty())
            for (int r = 2; r <= 16; r++)
                rates.push_back(double(r));
        std::vector<uword> p_tildes =
            spec.p_tildes.empty() ? std::vector<uword>{spec.scenario.n_rx} : spec.p_tildes;
        return run_grid(spec, rates, p_tildes);
    }

    static std::string fmt(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }

    void write_csv(const SweepResult &result, std::ostream &os)
    {
        os << "strategy,rate,k_dither,p_tilde,combining_ratio,m_levels,gamma,mse_empirical,"
              "mse_empirical_stderr,mse_predicted_mean,n_trials,skipped_reason\n";
        for (const SweepRow &r : result.rows)
        {
            os << r.strategy << ',' << fmt(r.rate) << ',' << r.k_dither << ',' << r.p_tilde << ','
               << fmt(r.combining_ratio) << ',' << r.m_levels << ',' << fmt(r.gamma) << ','
               << fmt(r.mse_empirical) << ',' << fmt(r.mse_empirical_stderr) << ','
               << fmt(r.mse_predicted_mean) << ',' << r.n_trials << ',' << r.skipped_reason
               << '\n';
        }
    }

    std::string csv_string(const SweepResult &result)
    {
        std::ostringstream os;
        write_csv(result, os);
        return os.str();
    }

} // namespace isacq
