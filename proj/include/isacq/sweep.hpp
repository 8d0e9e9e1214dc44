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

#ifndef isacq_sweep_H
#define isacq_sweep_H

#include <iosfwd>
#include <string>
#include <vector>

#include "isacq/sensing_pipeline.hpp"

// Monte Carlo experiment engine. A sweep is a grid of (strategy, rate,
// k_dither, p_tilde) points; each feasible point runs n_trials independent
// frames and reports the empirical MSE next to the closed-form prediction.
// Frame draws are keyed by trial index alone, so every point at the same
// trial index sees the same signal/channel/noise realization (common random
// numbers across strategies); dither streams are keyed per (point, trial).

namespace isacq
{

    enum class SweepStrategy
    {
        DD,
        DI,
        DigitalOnly,
        NoQuant
    };

    std::string to_string(SweepStrategy s);
    SweepStrategy sweep_strategy_from_string(const std::string &name);

    struct SweepSpec
    {
        ScenarioConfig scenario;
        std::vector<SweepStrategy> strategies = {SweepStrategy::DD, SweepStrategy::DI,
                                                 SweepStrategy::DigitalOnly,
                                                 SweepStrategy::NoQuant};
        std::vector<double> rates;   // empty: sweep-dependent default
        std::vector<uword> p_tildes; // empty: sweep-dependent default
        std::vector<uword> k_dithers = {0};
        double eta = 2.0;
        uword n_trials = 1000;
        uword n_saa = 10000;
        BudgetConvention convention = BudgetConvention::PerRealDim;
        unsigned n_threads = 1;
    };

    struct SweepRow
    {
        std::string strategy;
        double rate = 0.0;
        uword k_dither = 0;
        uword p_tilde = 0;
        double combining_ratio = 0.0;
        uword m_levels = 0;
        double gamma = 0.0;
        double mse_empirical = 0.0;
        double mse_empirical_stderr = 0.0;
        double mse_predicted_mean = 0.0;
        uword n_trials = 0;
        std::string skipped_reason; // empty when the point ran
    };

    struct SweepResult
    {
        std::vector<SweepRow> rows;
    };

    // Runs one grid point. Infeasible points come back as skipped rows with a
    // machine-readable reason instead of throwing.
    SweepRow run_point(const SweepSpec &spec, SweepStrategy strategy, double rate, uword k_dither,
                       uword p_tilde);

    // Combining-ratio sweep: p_tilde over 1..n_rx (or spec.p_tildes) for every
    // (strategy, rate, k_dither); digital-only and no-quant appear once per
    // applicable combination.
    SweepResult sweep_ratio(const SweepSpec &spec);

    // Rate sweep at fixed combining ratio (default r = 1): rates 2..16 unless
    // spec.rates is set.
    SweepResult sweep_rate(const SweepSpec &spec);

    // Rows sorted by (strategy, rate, k_dither, p_tilde); fixed numeric
    // formatting so equal seeds give byte-identical output.
    void write_csv(const SweepResult &result, std::ostream &os);
    std::string csv_string(const SweepResult &result);

} // namespace isacq

#endif
