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

#include "isacq/config_json.hpp"

namespace isacq
{

    using nlohmann::json;

    json matrix_to_json(const cx_mat &m)
    {
        json rows = json::array();
        for (uword r = 0; r < m.n_rows; r++)
        {
            json row = json::array();
            for (uword c = 0; c < m.n_cols; c++)
                row.push_back({m(r, c).real(), m(r, c).imag()});
            rows.push_back(std::move(row));
        }
        return rows;
    }

    cx_mat matrix_from_json(const json &j)
    {
        if (!j.is_array() || j.empty())
            throw std::invalid_argument("matrix literal must be a non-empty array of rows");
        uword n_rows = j.size();
        uword n_cols = j.at(0).size();
        cx_mat m(n_rows, n_cols);
        for (uword r = 0; r < n_rows; r++)
        {
            const json &row = j.at(r);
            if (row.size() != n_cols)
                throw std::invalid_argument("matrix literal rows have unequal lengths");
            for (uword c = 0; c < n_cols; c++)
            {
                const json &e = row.at(c);
                if (!e.is_array() || e.size() != 2)
                    throw std::invalid_argument("matrix entries must be [re, im] pairs");
                m(r, c) = cx_double(e.at(0).get<double>(), e.at(1).get<double>());
            }
        }
        return m;
    }

    BudgetConvention convention_from_string(const std::string &name)
    {
        if (name == "per-real-dim")
            return BudgetConvention::PerRealDim;
        if (name == "paper-literal")
            return BudgetConvention::PaperLiteral;
        throw std::invalid_argument("unknown budget convention '" + name + "'");
    }

    std::string to_string(BudgetConvention c)
    {
        return c == BudgetConvention::PerRealDim ? "per-real-dim" : "paper-literal";
    }

    ScenarioConfig scenario_from_json(const json &j)
    {
        ScenarioConfig cfg;
        cfg.n_tx = j.at("n_tx").get<uword>();
        cfg.n_rx = j.at("n_rx").get<uword>();
        cfg.n_snapshots = j.at("n_snapshots").get<uword>();
        cfg.sigma_w2 = j.at("sigma_w2").get<double>();
        cfg.master_seed = j.value("master_seed", std::uint64_t(0));

        const json &corr = j.at("correlation");
        std::string model = corr.at("model").get<std::string>();
        if (model == "jakes")
        {
            cfg.r_a = arma::conv_to<cx_mat>::from(
                jakes_correlation(cfg.n_rx, corr.at("rx_spacing").get<double>()));
            cfg.r_b = arma::conv_to<cx_mat>::from(
                jakes_correlation(cfg.n_tx, corr.at("tx_spacing").get<double>()));
        }
        else if (model == "explicit")
        {
            cfg.r_a = matrix_from_json(corr.at("r_a"));
            cfg.r_b = matrix_from_json(corr.at("r_b"));
        }
        else
            throw std::invalid_argument("unknown correlation model '" + model + "'");

        const json &pre = j.value("precoder", json("identity"));
        if (pre.is_string())
        {
            if (pre.get<std::string>() != "identity")
                throw std::invalid_argument("precoder must be \"identity\" or a matrix literal");
            cfg.precoder = arma::eye<cx_mat>(cfg.n_tx, cfg.n_tx);
        }
        else
            cfg.precoder = matrix_from_json(pre);

        cfg.validate();
        return cfg;
    }

    json scenario_to_json(const ScenarioConfig &cfg)
    {
        json j;
        j["n_tx"] = cfg.n_tx;
        j["n_rx"] = cfg.n_rx;
        j["n_snapshots"] = cfg.n_snapshots;
        j["sigma_w2"] = cfg.sigma_w2;
        j["master_seed"] = cfg.master_seed;
        j["correlation"] = {{"model", "explicit"},
                            {"r_a", matrix_to_json(cfg.r_a)},
                            {"r_b", matrix_to_json(cfg.r_b)}};
        j["precoder"] = matrix_to_json(cfg.precoder);
        return j;
    }

    SweepSpec sweep_from_json(const json &j)
    {
        SweepSpec spec;
        spec.scenario = scenario_from_json(j.contains("scenario") ? j.at("scenario") : j);
        if (!j.contains("sweep"))
            return spec;

        const json &s = j.at("sweep");
        if (s.contains("strategies"))
        {
            spec.strategies.clear();
            for (const auto &name : s.at("strategies"))
                spec.strategies.push_back(sweep_strategy_from_string(name.get<std::string>()));
        }
        if (s.contains("rates"))
            spec.rates = s.at("rates").get<std::vector<double>>();
        if (s.contains("p_tildes"))
            spec.p_tildes = s.at("p_tildes").get<std::vector<uword>>();
        if (s.contains("k_dithers"))
            spec.k_dithers = s.at("k_dithers").get<std::vector<uword>>();
        spec.eta = s.value("eta", spec.eta);
        spec.n_trials = s.value("n_trials", spec.n_trials);
        spec.n_saa = s.value("n_saa", spec.n_saa);
        if (s.contains("convention"))
            spec.convention = convention_from_string(s.at("convention").get<std::string>());
        spec.n_threads = s.value("threads", spec.n_threads);
        return spec;
    }

    json design_to_json(const CombinerDesign &d)
    {
        json j;
        j["strategy"] = d.strategy == Strategy::DD ? "dd" : "di";
        j["quant"] = {{"m_levels", d.quant.m_levels}, {"k_dither", d.quant.k_dither},
                      {"eta", d.quant.eta},           {"gamma", d.quant.gamma},
                      {"delta", d.quant.delta()},     {"p_tilde", d.quant.p_tilde}};
        j["kappa"] = d.kappa;
        j["beta"] = d.beta;
        j["sigma_max2"] = d.sigma_max2;
        j["gamma"] = d.gamma;
        j["a"] = matrix_to_json(d.a);
        j["v"] = matrix_to_json(d.v);
        j["lambda_diag"] = std::vector<double>(d.lambda_diag.begin(), d.lambda_diag.end());
        j["lambda_a"] = std::vector<double>(d.lambda_a.begin(), d.lambda_a.end());
        return j;
    }

} // namespace isacq
