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

#include "isacq/combiner_design.hpp"

#include <algorithm>
#include <cmath>

namespace isacq
{

    SignalSpectrum signal_spectrum(const cx_mat &r_b_sqrt, const cx_mat &r_b, const cx_mat &theta)
    {
        uword n_tx = r_b.n_rows;
        if (r_b_sqrt.n_rows != n_tx || r_b_sqrt.n_cols != n_tx || theta.n_rows != n_tx)
            throw DimensionMismatch("signal_spectrum: dimensions disagree");

        cx_mat c = r_b_sqrt * arma::conj(theta); // n_tx x L
        HermitianEig eig = hermitian_eig(c * c.t());

        SignalSpectrum out;
        out.eigenvalues = eig.values;
        out.u_prime = eig.vectors;
        out.d_b = arma::real(arma::diagvec(eig.vectors.t() * r_b * eig.vectors));
        return out;
    }

    double sigma_max_sq(const cx_mat &r_theta, const cx_mat &r_b, double sigma_w2)
    {
        return arma::trace(arma::conj(r_theta) * r_b).real() + sigma_w2;
    }

    double beta_param(uword k_dither, double kappa_val, double sigma_max2, uword m_levels,
                      uword p_tilde)
    {
        if (!(kappa_val > 0.0))
            throw std::invalid_argument("beta_param: kappa must be positive");
        double m2 = double(m_levels) * double(m_levels);
        return 2.0 * double(k_dither + 1) * kappa_val * sigma_max2 / (3.0 * m2 * double(p_tilde));
    }

    double allocation_objective(const vec &p, const vec &lambda_a,
                                const std::vector<SpectrumWeight> &weights, double sigma_w2,
                                double beta)
    {
        if (p.n_elem != lambda_a.n_elem)
            throw DimensionMismatch("allocation_objective: p and lambda_a lengths disagree");
        double f = 0.0;
        for (const auto &w : weights)
        {
            double num = w.weight * w.lambda;
            double slope = w.lambda + sigma_w2;
            for (uword i = 0; i < p.n_elem; i++)
            {
                if (p(i) <= 0.0)
                    continue;
                f += num * lambda_a(i) * p(i) / (slope * p(i) + beta);
            }
        }
        return f;
    }

    namespace
    {

        // Marginal-gain profile shared by all modes: g_i(p) = lambda_a(i) * h(p)
        // with h(p) = sum_n w_n lambda_n beta / ((lambda_n + sigma_w2) p + beta)^2.
        struct GainProfile
        {
            std::vector<double> num;   // w_n * lambda_n * beta
            std::vector<double> slope; // lambda_n + sigma_w2
            double beta;

            GainProfile(const std::vector<SpectrumWeight> &weights, double sigma_w2, double b)
                : beta(b)
            {
                num.reserve(weights.size());
                slope.reserve(weights.size());
                for (const auto &w : weights)
                {
                    if (w.weight < 0.0 || w.lambda < 0.0)
                        throw std::invalid_argument("solve_power_allocation: negative weight term");
                    double n = w.weight * w.lambda * b;
                    if (n == 0.0)
                        continue; // contributes nothing to gain or objective
                    num.push_back(n);
                    slope.push_back(w.lambda + sigma_w2);
                }
            }

            double operator()(double p) const
            {
                double acc = 0.0;
                for (std::size_t n = 0; n < num.size(); n++)
                {
                    double inv = 1.0 / (slope[n] * p + beta);
                    acc += num[n] * inv * inv;
                }
                return acc;
            }
        };

        constexpr double kInnerWidthTol = 1e-12;
        constexpr int kInnerMaxIter = 200;
        constexpr int kOuterMaxIter = 200;

        // Solves lambda_i * h(p) = mu for p within [lo, hi] by bisection;
        // endpoints act as the 0 / 1 caps of the allocation.
        double invert_gain(const GainProfile &h, double lambda_i, double mu, double lo, double hi)
        {
            if (lambda_i * h(lo) <= mu)
                return lo;
            if (lambda_i * h(hi) >= mu)
                return hi;
            for (int it = 0; it < kInnerMaxIter && (hi - lo) > kInnerWidthTol; it++)
            {
                double mid = 0.5 * (lo + hi);
                if (lambda_i * h(mid) > mu)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }

    } // namespace

    vec solve_power_allocation(const vec &lambda_a, const std::vector<SpectrumWeight> &weights,
                               double sigma_w2, double beta, double tol)
    {
        uword n = lambda_a.n_elem;
        if (n == 0)
            throw std::invalid_argument("solve_power_allocation: empty lambda_a");
        if (!(beta > 0.0))
            throw std::invalid_argument("solve_power_allocation: beta must be positive");

        GainProfile h(weights, sigma_w2, beta);
        double lam_max = lambda_a.max();
        if (lam_max <= 0.0 || h.num.empty())
            throw DegenerateProblemError("solve_power_allocation: objective is identically zero");

        if (n == 1)
            return vec{1.0}; // constraint-forced

        double h0 = h(0.0);

        // Outer bisection on the multiplier. p_at_lo / p_at_hi bracket each
        // p_i between its values at the current mu endpoints, which keeps the
        // inner bisections short as the outer bracket tightens.
        double mu_lo = 0.0, mu_hi = lam_max * h0;
        vec p_at_lo(n, arma::fill::ones);
        vec p_at_hi(n, arma::fill::zeros);
        for (uword i = 0; i < n; i++)
            if (lambda_a(i) <= 0.0)
                p_at_lo(i) = 0.0;

        vec p_best = p_at_lo;
        double best_gap = std::abs(arma::accu(p_best) - 1.0);

        for (int it = 0; it < kOuterMaxIter && best_gap > tol; it++)
        {
            double mu = 0.5 * (mu_lo + mu_hi);
            vec p(n, arma::fill::zeros);
            for (uword i = 0; i < n; i++)
                if (lambda_a(i) > 0.0)
                    p(i) = invert_gain(h, lambda_a(i), mu, p_at_hi(i), p_at_lo(i));
            double total = arma::accu(p);
            if (std::abs(total - 1.0) < best_gap)
            {
                best_gap = std::abs(total - 1.0);
                p_best = p;
            }
            if (total > 1.0)
            {
                mu_lo = mu;
                p_at_lo = p;
            }
            else
            {
                mu_hi = mu;
                p_at_hi = p;
            }
        }

        double total = arma::accu(p_best);
        if (total <= 0.0)
            throw DegenerateProblemError("solve_power_allocation: empty support");
        return p_best / total;
    }

    double allocation_kkt_residual(const vec &p, const vec &lambda_a,
                                   const std::vector<SpectrumWeight> &weights, double sigma_w2,
                                   double beta)
    {
        GainProfile h(weights, sigma_w2, beta);
        const double active_floor = 1e-9;

        double mu = 0.0;
        uword n_active = 0;
        for (uword i = 0; i < p.n_elem; i++)
            if (p(i) > active_floor)
            {
                mu += lambda_a(i) * h(p(i));
                n_active++;
            }
        if (n_active == 0)
            return arma::datum::inf;
        mu /= double(n_active);

        double res = 0.0;
        double h0 = h(0.0);
        for (uword i = 0; i < p.n_elem; i++)
        {
            if (p(i) > active_floor)
                res = std::max(res, std::abs(lambda_a(i) * h(p(i)) - mu));
            else
                res = std::max(res, std::max(0.0, lambda_a(i) * h0 - mu));
        }
        return res / std::max(mu, 1e-300);
    }

    cx_mat build_A(const vec &lambda_diag, const cx_mat &v, const cx_mat &r_a)
    {
        uword p_tilde = lambda_diag.n_elem;
        uword n_rx = v.n_rows;
        if (p_tilde > n_rx)
            throw DimensionMismatch("build_A: p_tilde exceeds n_rx");
        if (std::abs(arma::accu(arma::square(lambda_diag)) - 1.0) > 1e-6)
            throw std::invalid_argument("build_A: lambda_diag squares must sum to 1");

        cx_mat lam(p_tilde, n_rx, arma::fill::zeros);
        for (uword i = 0; i < p_tilde; i++)
            lam(i, i) = lambda_diag(i);
        return dft_matrix(p_tilde) * lam * v.t() * psd_inv_sqrt(r_a);
    }

    namespace
    {

        // Eigen factorization of the regularized observation covariance
        // S (x) G + c_q I with S = theta^T R_B theta^* + sigma_w2 I_L and
        // G = A R_A A^H. Everything downstream works in the (q_snap (x) q_comb)
        // basis, where the covariance is diagonal with entries
        // d_snap(l) * d_comb(p) + c_q.
        struct KronEigForm
        {
            cx_mat q_snap;
            vec d_snap;
            cx_mat q_comb;
            vec d_comb;
            double c_q;

            // Inverse diagonal in kron order (index l * p_tilde + p). With
            // c_q = 0 this is a pseudo-inverse: products below 1e-10 of the
            // largest are treated as exact zeros.
            vec inverse_diag() const
            {
                uword l_n = d_snap.n_elem, p_n = d_comb.n_elem;
                vec w(l_n * p_n);
                double floor = (c_q > 0.0)
                                   ? 0.0
                                   : 1e-10 * std::max(d_snap.max(), 0.0) * std::max(d_comb.max(), 0.0);
                for (uword l = 0; l < l_n; l++)
                    for (uword p = 0; p < p_n; p++)
                    {
                        double d = std::max(d_snap(l), 0.0) * std::max(d_comb(p), 0.0);
                        double den = d + c_q;
                        w(l * p_n + p) = (den > floor && den > 0.0) ? 1.0 / den : 0.0;
                    }
                return w;
            }
        };

        KronEigForm factor_observation(const cx_mat &a, const cx_mat &theta, const cx_mat &r_a,
                                       const cx_mat &r_b, double sigma_w2, double gamma,
                                       uword k_dither, uword m_levels)
        {
            uword n_rx = r_a.n_rows;
            uword n_l = theta.n_cols;
            if (a.n_cols != n_rx)
                throw DimensionMismatch("build_B: combiner column count must equal n_rx");
            if (theta.n_rows != r_b.n_rows)
                throw DimensionMismatch("build_B: theta rows must equal n_tx");
            if (m_levels < 1)
                throw std::invalid_argument("build_B: m_levels must be >= 1");

            KronEigForm f;
            cx_mat s = arma::strans(theta) * r_b * arma::conj(theta) +
                       sigma_w2 * arma::eye<cx_mat>(n_l, n_l);
            HermitianEig es = hermitian_eig(s);
            f.q_snap = es.vectors;
            f.d_snap = es.values;

            HermitianEig eg = hermitian_eig(a * r_a * a.t());
            f.q_comb = eg.vectors;
            f.d_comb = eg.values;

            double m2 = double(m_levels) * double(m_levels);
            f.c_q = 2.0 * double(k_dither + 1) * gamma * gamma / (3.0 * m2);
            return f;
        }

    } // namespace

    cx_mat build_B(const cx_mat &a, const cx_mat &theta, const cx_mat &r_a, const cx_mat &r_b,
                   double sigma_w2, double gamma, uword k_dither, uword m_levels)
    {
        KronEigForm f = factor_observation(a, theta, r_a, r_b, sigma_w2, gamma, k_dither, m_levels);

        // B = (R_B theta^* Q_s (x) R_A A^H Q_c) diag(w) (Q_s (x) Q_c)^H
        cx_mat left = arma::kron(r_b * arma::conj(theta) * f.q_snap, r_a * a.t() * f.q_comb);
        vec w = f.inverse_diag();
        left.each_row() %= arma::conv_to<arma::cx_rowvec>::from(w.t());
        return left * arma::kron(f.q_snap.t(), f.q_comb.t());
    }

    double predicted_mse(const cx_mat &a, const cx_mat &theta, const cx_mat &r_a,
                         const cx_mat &r_b, double sigma_w2, double gamma, uword k_dither,
                         uword m_levels)
    {
        KronEigForm f = factor_observation(a, theta, r_a, r_b, sigma_w2, gamma, k_dither, m_levels);

        uword n_tx = r_b.n_rows;
        uword n_rx = r_a.n_rows;
        double prior = arma::trace(r_b).real() * arma::trace(r_a).real();

        // Tr((theta^T R_B^2 theta^* (x) A R_A^2 A^H) Sigma^{-1}) collapses to a
        // separable double sum over the rotated diagonals.
        cx_mat e_snap_m = arma::strans(theta) * r_b * r_b * arma::conj(theta);
        cx_mat f_comb_m = a * r_a * r_a * a.t();
        vec e_snap = arma::real(arma::diagvec(f.q_snap.t() * e_snap_m * f.q_snap));
        vec f_comb = arma::real(arma::diagvec(f.q_comb.t() * f_comb_m * f.q_comb));

        vec w = f.inverse_diag();
        uword p_n = f.d_comb.n_elem;
        double captured = 0.0;
        for (uword l = 0; l < e_snap.n_elem; l++)
            for (uword p = 0; p < p_n; p++)
                captured += e_snap(l) * f_comb(p) * w(l * p_n + p);

        return std::max(0.0, (prior - captured) / double(n_tx * n_rx));
    }

    vec saa_spectrum_pool(const ScenarioConfig &cfg, uword n_samples, RngStream &rng)
    {
        if (n_samples < 1)
            throw std::invalid_argument("saa_spectrum_pool: n_samples must be >= 1");
        cx_mat r_b_sqrt = psd_sqrt(cfg.r_b);
        vec pool(n_samples * cfg.n_tx);
        for (uword s = 0; s < n_samples; s++)
        {
            cx_mat theta = sample_signal(cfg, rng);
            cx_mat c = r_b_sqrt * arma::conj(theta);
            HermitianEig eig = hermitian_eig(c * c.t());
            pool.subvec(s * cfg.n_tx, (s + 1) * cfg.n_tx - 1) = eig.values;
        }
        return pool;
    }

    // Shared tail of both strategies once the allocation weights are known.
    static CombinerDesign finish_design(const ScenarioConfig &cfg, const QuantizerSpec &quant,
                                        const std::vector<SpectrumWeight> &weights,
                                        Strategy strategy)
    {
        if (quant.p_tilde < 1 || quant.p_tilde > cfg.n_rx)
            throw DimensionMismatch("combiner design: p_tilde must be in [1, n_rx]");

        CombinerDesign d;
        d.strategy = strategy;
        d.quant = quant;
        d.kappa = kappa(quant.eta, quant.k_dither, quant.m_levels);
        d.sigma_max2 = sigma_max_sq(cfg.r_theta(), cfg.r_b, cfg.sigma_w2);
        d.beta = beta_param(quant.k_dither, d.kappa, d.sigma_max2, quant.m_levels, quant.p_tilde);

        HermitianEig ea = hermitian_eig(cfg.r_a);
        d.v = ea.vectors;
        d.lambda_a = ea.values;

        vec p = solve_power_allocation(ea.values.head(quant.p_tilde), weights, cfg.sigma_w2,
                                       d.beta);
        d.lambda_diag = arma::sqrt(p);
        d.a = build_A(d.lambda_diag, d.v, cfg.r_a);
        d.u_rot = dft_matrix(quant.p_tilde);

        d.gamma = std::sqrt(d.kappa / double(quant.p_tilde) * d.sigma_max2);
        d.quant.gamma = d.gamma;
        return d;
    }

    CombinerDesign design_dd(const ScenarioConfig &cfg, const cx_mat &theta,
                             const QuantizerSpec &quant)
    {
        SignalSpectrum sp = signal_spectrum(psd_sqrt(cfg.r_b), cfg.r_b, theta);
        std::vector<SpectrumWeight> weights(cfg.n_tx);
        for (uword n = 0; n < cfg.n_tx; n++)
            weights[n] = {std::max(sp.d_b(n), 0.0), std::max(sp.eigenvalues(n), 0.0)};
        return finish_design(cfg, quant, weights, Strategy::DD);
    }

    CombinerDesign design_di(const ScenarioConfig &cfg, const QuantizerSpec &quant,
                             uword n_samples, RngStream &rng)
    {
        vec pool = saa_spectrum_pool(cfg, n_samples, rng);
        std::vector<SpectrumWeight> weights(pool.n_elem);
        double w = 1.0 / double(n_samples);
        for (uword n = 0; n < pool.n_elem; n++)
            weights[n] = {w, std::max(pool(n), 0.0)};
        return finish_design(cfg, quant, weights, Strategy::DI);
    }

} // namespace isacq
