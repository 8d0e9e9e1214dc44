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

#ifndef isacq_combiner_design_H
#define isacq_combiner_design_H

#include <vector>

#include "isacq/channel_model.hpp"
#include "isacq/mat_core.hpp"
#include "isacq/quantizer.hpp"
#include "isacq/rng.hpp"

// MSE-optimal analog/digital processing around the scalar ADCs.
//
// The analog combining matrix factors as A = U Lambda V^H R_A^{-1/2}: V is
// the eigenmatrix of the receive correlation R_A, Lambda carries per-mode
// gains sigma_bar_i with sum sigma_bar_i^2 = 1 fixed by a water-filling
// power allocation, and U is the unitary DFT rotation that equalizes the ADC
// input powers (every diagonal entry of A R_A A^H becomes 1 / p_tilde).
//
// Two strategies set the allocation weights:
//   DD - re-optimized per transmitted signal realization, weighted by the
//        signal's empirical spectrum;
//   DI - optimized once in expectation over the signal, with the expectation
//        replaced by a sample average over n_samples signal draws.
//
// The digital matrix B is the linear MMSE estimator for the quantized,
// combined observation and is recomputed per frame in both strategies.

namespace isacq
{

    enum class Strategy
    {
        DD, // data-dependent
        DI  // data-independent
    };

    // Spectrum of one transmitted-signal realization.
    struct SignalSpectrum
    {
        vec eigenvalues; // of R_B^{1/2} theta^* theta^T (R_B^{1/2})^H, descending
        cx_mat u_prime;  // its eigenmatrix
        vec d_b;         // diag(u_prime^H R_B u_prime), nonnegative
    };

    // One (weight, eigenvalue) term of the allocation objective.
    struct SpectrumWeight
    {
        double weight;
        double lambda;
    };

    struct CombinerDesign
    {
        cx_mat a;        // p_tilde x n_rx analog combining matrix
        vec lambda_diag; // sigma_bar, length p_tilde, sum of squares = 1
        cx_mat v;        // eigenmatrix of R_A, n_rx x n_rx
        cx_mat u_rot;    // DFT rotation, p_tilde x p_tilde
        vec lambda_a;    // eigenvalues of R_A, descending, length n_rx
        double kappa = 0.0;
        double beta = 0.0;
        double sigma_max2 = 0.0;
        double gamma = 0.0;
        Strategy strategy = Strategy::DD;
        QuantizerSpec quant; // gamma field filled by the design
    };

    // Eigen-spectrum of R_B^{1/2} theta^* theta^T (R_B^{1/2})^H plus the
    // diagonal weights diag(U'^H R_B U').
    SignalSpectrum signal_spectrum(const cx_mat &r_b_sqrt, const cx_mat &r_b, const cx_mat &theta);

    // Tr(R_theta^* R_B) + sigma_w2 - the per-ADC-chain input power ceiling
    double sigma_max_sq(const cx_mat &r_theta, const cx_mat &r_b, double sigma_w2);

    // beta = 2 (k_dither + 1) kappa sigma_max2 / (3 m^2 p_tilde)
    double beta_param(uword k_dither, double kappa_val, double sigma_max2, uword m_levels,
                      uword p_tilde);

    // f(p) = sum_n sum_i w_n lambda_a(i) lambda_n p(i)
    //                      / ((lambda_n + sigma_w2) p(i) + beta),
    // the allocation objective evaluated on the simplex (sum p = 1).
    double allocation_objective(const vec &p, const vec &lambda_a,
                                const std::vector<SpectrumWeight> &weights, double sigma_w2,
                                double beta);

    // Maximizes allocation_objective over {p >= 0, sum p = 1} by dual
    // water-filling: for a trial multiplier mu each p_i solves
    // g_i(p_i) = mu by bisection on [0, 1] (cap 200 iterations, width 1e-12),
    // and mu is found by outer bisection on sum_i p_i(mu) = 1 over
    // (0, max_i g_i(0)], where
    //   g_i(p) = lambda_a(i) * sum_n w_n lambda_n beta
    //                          / ((lambda_n + sigma_w2) p + beta)^2.
    // Throws DegenerateProblemError when the objective is identically zero.
    vec solve_power_allocation(const vec &lambda_a, const std::vector<SpectrumWeight> &weights,
                               double sigma_w2, double beta, double tol = 1e-12);

    // Relative KKT stationarity residual of an allocation: the marginal gains
    // on the support must share a common value mu, and be <= mu off it.
    double allocation_kkt_residual(const vec &p, const vec &lambda_a,
                                   const std::vector<SpectrumWeight> &weights, double sigma_w2,
                                   double beta);

    // A = dft_matrix(p_tilde) * diag(lambda_diag) * V^H * R_A^{-1/2};
    // requires sum lambda_diag^2 = 1, which makes Tr(A R_A A^H) = 1 and every
    // diagonal entry of A R_A A^H equal to 1 / p_tilde.
    cx_mat build_A(const vec &lambda_diag, const cx_mat &v, const cx_mat &r_a);

    // Linear MMSE post-processing matrix for the quantized observation:
    // B = (R_B theta^* (x) R_A A^H) *
    //     [ ((theta^T R_B theta^* + sigma_w2 I_L) (x) A R_A A^H)
    //       + (2 (k_dither+1) gamma^2 / (3 m^2)) I_{L p_tilde} ]^{-1}.
    // gamma = 0 switches the inverse to a pseudo-inverse (no-quantization
    // limit). The inverse is evaluated in the Kronecker eigenbasis of the two
    // factors, never by dense LU on the L*p_tilde system.
    cx_mat build_B(const cx_mat &a, const cx_mat &theta, const cx_mat &r_a, const cx_mat &r_b,
                   double sigma_w2, double gamma, uword k_dither, uword m_levels);

    // Closed-form average MSE of the estimate B z for a given combiner and
    // signal realization (per entry of vec(G), i.e. divided by n_tx * n_rx).
    double predicted_mse(const cx_mat &a, const cx_mat &theta, const cx_mat &r_a,
                         const cx_mat &r_b, double sigma_w2, double gamma, uword k_dither,
                         uword m_levels);

    // Pooled spectrum eigenvalues over n_samples independent signal draws,
    // flattened as pool[(n_s - 1) * n_tx + n_t] with each sample's eigenvalues
    // in descending order.
    vec saa_spectrum_pool(const ScenarioConfig &cfg, uword n_samples, RngStream &rng);

    // Data-dependent design for one signal realization. quant.gamma is
    // ignored on input; the returned design carries the support
    // gamma = sqrt(kappa / p_tilde) * sigma_max.
    CombinerDesign design_dd(const ScenarioConfig &cfg, const cx_mat &theta,
                             const QuantizerSpec &quant);

    // Data-independent design: the allocation is solved once against the SAA
    // spectrum pool (weights 1 / n_samples) and A never depends on the
    // runtime signal.
    CombinerDesign design_di(const ScenarioConfig &cfg, const QuantizerSpec &quant,
                             uword n_samples, RngStream &rng);

} // namespace isacq

#endif
