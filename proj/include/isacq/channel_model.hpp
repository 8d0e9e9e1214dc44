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

#ifndef isacq_channel_model_H
#define isacq_channel_model_H

#include <cstdint>

#include "isacq/mat_core.hpp"
#include "isacq/rng.hpp"

// Scenario configuration, spatial correlation construction, and random
// generation of transmit signals, sensing channels, noise and received data.
//
// Model per frame: the transmitter emits n_snapshots columns of an n_tx x L
// signal theta (each column CN(0, R_theta) with R_theta = W_pre W_pre^H); the
// echo is Y = G * theta + W where G is the n_rx x n_tx target impulse
// response with Kronecker correlation E{vec(G) vec(G)^H} = R_B (x) R_A, and
// the noise columns are i.i.d. CN(0, sigma_w2 * R_A). Vectorized:
// y = (theta^T (x) I) vec(G) + vec(W).

namespace isacq
{

    struct ScenarioConfig
    {
        uword n_tx = 0;        // transmit antennas
        uword n_rx = 0;        // receive antennas
        uword n_snapshots = 0; // L, snapshots per frame (L >= n_tx)
        cx_mat r_a;            // receive correlation, n_rx x n_rx, unit diagonal
        cx_mat r_b;            // transmit correlation, n_tx x n_tx, unit diagonal
        cx_mat precoder;       // W_pre, n_tx x n_tx
        double sigma_w2 = 0.0; // noise variance
        std::uint64_t master_seed = 0;

        // Per-snapshot signal correlation W_pre * W_pre^H
        cx_mat r_theta() const
        {
            return precoder * precoder.t();
        }

        // Throws std::invalid_argument on violated invariants (dimension
        // agreement, L >= n_tx, Hermitian PSD unit-diagonal correlations).
        void validate() const;
    };

    // One Monte Carlo frame. All four members are drawn from streams derived
    // deterministically from (master_seed, trial_index), so equal keys
    // reproduce the frame bit-for-bit.
    struct FrameDraw
    {
        cx_mat theta; // n_tx x L
        cx_vec g;     // vec(G), length n_tx * n_rx
        cx_mat noise; // n_rx x L
        cx_vec y;     // received vector, length n_rx * L
    };

    // Zero-order Bessel function of the first kind, |err| < 1e-7 on |x| <= 100.
    double bessel_j0(double x);

    // Correlation matrix with entries J0(spacing * |i - j|); real symmetric
    // Toeplitz with unit diagonal (numerically PSD after the usual clamp).
    mat jakes_correlation(uword n, double spacing);

    // theta = W_pre * theta0, theta0 i.i.d. CN(0, 1)
    cx_mat sample_signal(const ScenarioConfig &cfg, RngStream &rng);

    // vec(R_A^{1/2} G0 (R_B^{1/2})^T), G0 i.i.d. CN(0, 1)
    cx_vec sample_channel(const ScenarioConfig &cfg, RngStream &rng);

    // Columns i.i.d. CN(0, sigma_w2 * R_A)
    cx_mat sample_noise(const ScenarioConfig &cfg, RngStream &rng);

    // y = (theta^T (x) I_{n_rx}) g + vec(noise), computed as vec(G*theta + W)
    cx_vec received_vector(const cx_mat &theta, const cx_vec &g_vec, const cx_mat &noise);

    // Draws signal, channel and noise from disjoint purpose-tagged substreams
    // of (cfg.master_seed, trial_index) and assembles the received vector.
    FrameDraw draw_frame(const ScenarioConfig &cfg, std::uint64_t trial_index);

} // namespace isacq

#endif
