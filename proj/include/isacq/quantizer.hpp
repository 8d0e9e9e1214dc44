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

#ifndef isacq_quantizer_H
#define isacq_quantizer_H

#include "isacq/mat_core.hpp"
#include "isacq/rng.hpp"

// Bit-budget accounting and dithered uniform scalar quantization.
//
// A rate-R budget gives M_bit = R * n_rx * L bits per frame, shared by
// p_tilde complex ADC chains over L snapshots. Each complex sample is
// quantized per real dimension by a midrise uniform quantizer with m_levels
// levels over support [-gamma, gamma]; k_dither independent uniform dither
// signals are added (and not subtracted) before quantization, which whitens
// the quantization error at the price of (k_dither + 1) times the noise.

namespace isacq
{

    // How the frame bit budget converts into levels per real dimension.
    //   PerRealDim:   m = floor(2^{M_bit / (2 p_tilde L)})  (default; each
    //                 complex sample costs 2 log2(m) bits)
    //   PaperLiteral: m = floor(2^{M_bit / (p_tilde L)})
    enum class BudgetConvention
    {
        PerRealDim,
        PaperLiteral
    };

    struct QuantizerSpec
    {
        uword m_levels = 0;  // levels per real dimension, >= 2
        uword k_dither = 0;  // number of dither signals
        double eta = 0.0;    // support multiple of the input std deviation
        double gamma = 0.0;  // ADC support (saturation range)
        uword p_tilde = 0;   // complex ADC chains per snapshot

        // Quantization spacing; 2 gamma / m_levels by construction
        double delta() const
        {
            return 2.0 * gamma / double(m_levels);
        }

        // A positive support exists iff eta < sqrt(3 / (2 k_dither)) * m_levels
        // (always true for k_dither = 0)
        bool feasible() const
        {
            if (k_dither == 0)
                return true;
            double m2 = double(m_levels) * double(m_levels);
            return 2.0 * double(k_dither) * eta * eta / (3.0 * m2) < 1.0;
        }
    };

    // Levels per real dimension for a rate-R budget; throws
    // ResolutionTooLowError when the result would be below 2.
    uword resolution_from_budget(double rate, uword n_rx, uword n_snapshots, uword p_tilde,
                                 BudgetConvention convention = BudgetConvention::PerRealDim);

    // kappa = eta^2 / (1 - 2 k_dither eta^2 / (3 m^2));
    // throws InfeasibleError when the denominator is not positive.
    double kappa(double eta, uword k_dither, uword m_levels);

    // gamma = sqrt(kappa * sigma_max2 * max_i diag(a_gram)) with
    // a_gram = A R_A A^H; reduces to sqrt(kappa / p_tilde) * sigma_max for
    // equal-diagonal (DFT-rotated, trace-1) designs.
    double support_from_combiner(double kappa_val, double sigma_max2, const cx_mat &a_gram);

    // Midrise uniform quantizer on [-gamma, gamma]; out-of-range inputs
    // saturate to sign(alpha) * (gamma - delta / 2).
    double uniform_quantize(double alpha, double gamma, uword m_levels);

    // Non-subtractive dithered quantizer: q(Re{x + sum xi_k}) + j q(Im{...}),
    // dither real/imag parts i.i.d. uniform on [-delta/2, delta/2]. When
    // clipped is non-null it is incremented once per saturated real dimension.
    cx_double dithered_quantize(cx_double x, const QuantizerSpec &spec, RngStream &rng,
                                uword *clipped = nullptr);

    // Element-wise dithered quantization with independent dither per element,
    // consumed in index order.
    cx_vec quantize_vector(const cx_vec &u, const QuantizerSpec &spec, RngStream &rng,
                           uword *clipped = nullptr);

    // Total complex error variance of the dithered quantizer,
    // 2 (k_dither + 1) gamma^2 / (3 m^2)
    double quantization_noise_variance(const QuantizerSpec &spec);

} // namespace isacq

#endif
