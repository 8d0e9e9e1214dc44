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

#include "isacq/channel_model.hpp"

#include <cmath>
#include <stdexcept>

namespace isacq
{

    static void check_correlation(const cx_mat &r, uword n, const char *name)
    {
        if (r.n_rows != n || r.n_cols != n)
            throw std::invalid_argument(std::string(name) + ": wrong dimensions");
        if (arma::abs(r - r.t()).max() > 1e-10)
            throw std::invalid_argument(std::string(name) + ": not Hermitian");
        if (arma::abs(r.diag() - arma::ones<cx_vec>(n)).max() > 1e-10)
            throw std::invalid_argument(std::string(name) + ": diagonal is not 1");
    }

    void ScenarioConfig::validate() const
    {
        if (n_tx < 1 || n_rx < 1 || n_snapshots < 1)
            throw std::invalid_argument("ScenarioConfig: dimensions must be >= 1");
        if (n_snapshots < n_tx)
            throw std::invalid_argument("ScenarioConfig: requires n_snapshots >= n_tx");
        check_correlation(r_a, n_rx, "r_a");
        check_correlation(r_b, n_tx, "r_b");
        if (precoder.n_rows != n_tx || precoder.n_cols != n_tx)
            throw std::invalid_argument("ScenarioConfig: precoder must be n_tx x n_tx");
        if (!(sigma_w2 > 0.0))
            throw std::invalid_argument("ScenarioConfig: sigma_w2 must be positive");
        hermitian_eig(r_a);
        hermitian_eig(r_b);
    }

    double bessel_j0(double x)
    {
        // J0 is even; cyl_bessel_j wants a nonnegative argument
        return std::cyl_bessel_j(0.0, std::abs(x));
    }

    mat jakes_correlation(uword n, double spacing)
    {
        if (n < 1)
            throw std::invalid_argument("jakes_correlation: n must be >= 1");
        if (!(spacing > 0.0))
            throw std::invalid_argument("jakes_correlation: spacing must be positive");
        mat r(n, n);
        for (uword i = 0; i < n; i++)
            for (uword j = 0; j <= i; j++)
            {
                double v = bessel_j0(spacing * double(i - j));
                r(i, j) = v;
                r(j, i) = v;
            }
        return r;
    }

    // Fills column-major so the draw order is independent of how callers
    // traverse the matrix afterwards.
    static cx_mat standard_complex_gaussian(uword rows, uword cols, RngStream &rng)
    {
        cx_mat m(rows, cols);
        for (uword c = 0; c < cols; c++)
            for (uword r = 0; r < rows; r++)
                m(r, c) = rng.complex_gaussian();
        return m;
    }

    cx_mat sample_signal(const ScenarioConfig &cfg, RngStream &rng)
    {
        cx_mat theta0 = standard_complex_gaussian(cfg.n_tx, cfg.n_snapshots, rng);
        return cfg.precoder * theta0;
    }

    cx_vec sample_channel(const ScenarioConfig &cfg, RngStream &rng)
    {
        cx_mat g0 = standard_complex_gaussian(cfg.n_rx, cfg.n_tx, rng);
        cx_mat g = psd_sqrt(cfg.r_a) * g0 * arma::strans(psd_sqrt(cfg.r_b));
        return arma::vectorise(g);
    }

    cx_mat sample_noise(const ScenarioConfig &cfg, RngStream &rng)
    {
        cx_mat v = standard_complex_gaussian(cfg.n_rx, cfg.n_snapshots, rng);
        return std::sqrt(cfg.sigma_w2) * (psd_sqrt(cfg.r_a) * v);
    }

    cx_vec received_vector(const cx_mat &theta, const cx_vec &g_vec, const cx_mat &noise)
    {
        uword n_tx = theta.n_rows;
        uword n_l = theta.n_cols;
        if (g_vec.n_elem % n_tx != 0)
            throw DimensionMismatch("received_vector: g length not divisible by n_tx");
        uword n_rx = g_vec.n_elem / n_tx;
        if (noise.n_rows != n_rx || noise.n_cols != n_l)
            throw DimensionMismatch("received_vector: noise dimensions disagree");
        cx_mat g = arma::reshape(g_vec, n_rx, n_tx);
        return arma::vectorise(g * theta + noise);
    }

    FrameDraw draw_frame(const ScenarioConfig &cfg, std::uint64_t trial_index)
    {
        FrameDraw f;
        RngStream rs(cfg.master_seed, "signal", trial_index);
        RngStream rc(cfg.master_seed, "channel", trial_index);
        RngStream rn(cfg.master_seed, "noise", trial_index);
        f.theta = sample_signal(cfg, rs);
        f.g = sample_channel(cfg, rc);
        f.noise = sample_noise(cfg, rn);
        f.y = received_vector(f.theta, f.g, f.noise);
        return f;
    }

} // namespace isacq
