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

#ifndef isacq_rng_H
#define isacq_rng_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace isacq
{

    // Splittable random stream. Every stream is keyed by
    // (master_seed, purpose, index_a, index_b); equal keys reproduce the exact
    // same draw sequence on every platform. mt19937_64 is fully specified by the
    // standard, and all variate transforms below are hand-rolled (the std
    // distributions are implementation-defined), so outputs are bit-stable.
    class RngStream
    {
      public:
        RngStream(std::uint64_t master_seed, std::string_view purpose,
                  std::uint64_t index_a = 0, std::uint64_t index_b = 0)
        {
            std::uint64_t s = 0x9e3779b97f4a7c15ULL;
            s = mix64(s ^ master_seed);
            s = mix64(s ^ fnv1a(purpose));
            s = mix64(s ^ index_a);
            s = mix64(s ^ index_b);
            gen_.seed(s);
        }

        std::uint64_t next_u64()
        {
            return gen_();
        }

        // Uniform on [0, 1), 53-bit resolution
        double uniform01()
        {
            return double(gen_() >> 11) * 0x1.0p-53;
        }

        // Uniform on [-half_width, half_width]
        double uniform_symmetric(double half_width)
        {
            return (2.0 * uniform01() - 1.0) * half_width;
        }

        // Standard real Gaussian N(0, 1), Box-Muller with cached second value
        double gaussian()
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
            double u2 = uniform01();
            double r = std::sqrt(-2.0 * std::log(u1));
            double phi = 2.0 * std::numbers::pi * u2;
            spare_ = r * std::sin(phi);
            has_spare_ = true;
            return r * std::cos(phi);
        }

        // Circularly-symmetric complex Gaussian CN(0, 1):
        // real and imaginary parts independent N(0, 1/2)
        std::complex<double> complex_gaussian()
        {
            double u1 = 1.0 - uniform01();
            double u2 = uniform01();
            double r = std::sqrt(-std::log(u1));
            double phi = 2.0 * std::numbers::pi * u2;
            return {r * std::cos(phi), r * std::sin(phi)};
        }

      private:
        static constexpr std::uint64_t mix64(std::uint64_t z)
        {
            z ^= z >> 30;
            z *= 0xbf58476d1ce4e5b9ULL;
            z ^= z >> 27;
            z *= 0x94d049bb133111ebULL;
            z ^= z >> 31;
            return z;
        }

        static constexpr std::uint64_t fnv1a(std::string_view s)
        {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (char c : s)
            {
                h ^= std::uint64_t(static_cast<unsigned char>(c));
                h *= 0x100000001b3ULL;
            }
            return h;
        }

        std::mt19937_64 gen_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };

} // namespace isacq

#endif
