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

#ifndef isacq_errors_H
#define isacq_errors_H

#include <stdexcept>
#include <string>

namespace isacq
{

    // Base class for all library errors so callers can catch everything at once.
    struct Error : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct DimensionMismatch : Error
    {
        using Error::Error;
    };

    // Input violated the Hermitian-symmetry tolerance.
    struct NonHermitianError : Error
    {
        using Error::Error;
    };

    // Input has an eigenvalue below the numerical-PSD tolerance.
    struct NotPsdError : Error
    {
        using Error::Error;
    };

    // Iterative factorization did not converge (pathological input).
    struct ConvergenceError : Error
    {
        using Error::Error;
    };

    // Linear system failed the conditioning guard.
    struct SingularError : Error
    {
        using Error::Error;
    };

    // No positive ADC support exists for the requested dither/resolution combo.
    struct InfeasibleError : Error
    {
        using Error::Error;
    };

    // Bit budget yields fewer than 2 quantization levels per real dimension.
    struct ResolutionTooLowError : Error
    {
        using Error::Error;
    };

    // Power-allocation problem has an identically zero objective.
    struct DegenerateProblemError : Error
    {
        using Error::Error;
    };

} // namespace isacq

#endif
