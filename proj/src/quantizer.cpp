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

#include "isacq/quantizer.hpp"

#include <algorithm>
#include <cmath>

namespace isacq
{

    uword resolution_from_budget(double rate, uword n_rx, uword n_snapshots, uword p_tilde,
                                 BudgetConvention convention)
    {
        if (rate <= 0.0)
            throw std::invalid_argument("resolution_from_budget: rate must be positive");
        if (n_rx < 1 || n_snapshots < 1 || p_tilde < 1)
            throw std::invalid_argument("resolution_from_budget: counts must be >= 1");

        double m_bit = rate * double(n_rx) * double(n_snapshots);
        double denom = double(p_tilde) * double(n_snapshots);
        if (convention == BudgetConvention::PerRealDim)
            denom *= 2.0;
        uword m = uword(std::floor(std::pow(2.0, m_bit / denom)));
        if (m < 2)
            throw ResolutionTooLowError("resolution_from_budget: fewer than 2 levels at p_tilde=" +
                                        std::to_string(p_tilde));
        return m;
    }

    double kappa(double eta, uword k_dither, uword m_levels)
    {
        if (m_levels < 2)
            throw std::invalid_argument("kappa: m_levels must be >= 2");
        double m2 = double(m_levels) * double(m_levels);
        double denom = 1.0 - 2.0 * double(k_dither) * eta * eta / (3.0 * m2);
        if (denom <= 0.0)
            throw InfeasibleError("kappa: no positive support exists (eta too large for m_levels)");
        return eta * eta / denom;
    }

    double support_from_combiner(double kappa_val, double sigma_max2, const cx_mat &a_gram)
    {
        if (!(kappa_val > 0.0))
            throw std::invalid_argument("support_from_combiner: kappa must be positive");
        double peak = arma::real(a_gram.diag()).max();
        return std::sqrt(kappa_val * sigma_max2 * peak);
    }

    double uniform_quantize(double alpha, double gamma, uword m_levels)
    {
        double delta = 2.0 * gamma / double(m_levels);
        auto level = [&](double l) { return -gamma + delta * (l + 0.5); };
        // saturation reproduces the edge levels bit-for-bit, so re-quantizing
        // an output always returns it unchanged
        if (std::abs(alpha) > gamma)
            return alpha >= 0.0 ? level(double(m_levels - 1)) : level(0.0);
        // cell index, clamped so alpha == +gamma lands in the top cell
        double l = std::floor((alpha + gamma) / delta);
        l = std::clamp(l, 0.0, double(m_levels - 1));
        return level(l);
    }

    static double quantize_real(double v, const QuantizerSpec &spec, uword *clipped)
    {
        if (clipped && std::abs(v) > spec.gamma)
            (*clipped)++;
        return uniform_quantize(v, spec.gamma, spec.m_levels);
    }

    cx_double dithered_quantize(cx_double x, const QuantizerSpec &spec, RngStream &rng,
                                uword *clipped)
    {
        double half = 0.5 * spec.delta();
        cx_double dithered = x;
        for (uword k = 0; k < spec.k_dither; k++)
        {
            double re = rng.uniform_symmetric(half);
            double im = rng.uniform_symmetric(half);
            dithered += cx_double(re, im);
        }
        return {quantize_real(dithered.real(), spec, clipped),
                quantize_real(dithered.imag(), spec, clipped)};
    }

    cx_vec quantize_vector(const cx_vec &u, const QuantizerSpec &spec, RngStream &rng,
                           uword *clipped)
    {
        cx_vec z(u.n_elem);
        for (uword i = 0; i < u.n_elem; i++)
            z(i) = dithered_quantize(u(i), spec, rng, clipped);
        return z;
    }

    double quantization_noise_variance(const QuantizerSpec &spec)
    {
        double m2 = double(spec.m_levels) * double(spec.m_levels);
        return 2.0 * double(spec.k_dither + 1) * spec.gamma * spec.gamma / (3.0 * m2);
    }

} // namespace isacq
