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

#ifndef isacq_mat_core_H
#define isacq_mat_core_H

#include <armadillo>
#include <complex>

#include "isacq/errors.hpp"

// Dense complex linear-algebra primitives shared by all other modules.
// Matrices are armadillo cx_mat throughout. All functions are pure and
// thread-safe. Eigen/singular values are always returned in descending
// order; Hermitian square roots use the eigendecomposition square root so
// that inverse/forward roots compose with the same eigenbasis.

namespace isacq
{

    using arma::cx_mat;
    using arma::cx_vec;
    using arma::mat;
    using arma::uword;
    using arma::vec;
    using cx_double = std::complex<double>;

    // Eigendecomposition of a Hermitian matrix, values sorted descending,
    // unit-norm eigenvector columns.
    struct HermitianEig
    {
        vec values;     // descending
        cx_mat vectors; // unitary, column i pairs with values(i)
    };

    // Full singular value decomposition m = u * diag(s) * v^H (s descending).
    struct SvdResult
    {
        cx_mat u; // p x p unitary
        vec s;    // min(p, n), nonnegative descending
        cx_mat v; // n x n unitary
    };

    // Kronecker product; block (i,j) of the result equals a(i,j) * b.
    cx_mat kron(const cx_mat &a, const cx_mat &b);

    // Throws NonHermitianError when any entry of m - m^H exceeds herm_tol.
    HermitianEig hermitian_eig(const cx_mat &m, double herm_tol = 1e-10);

    // Hermitian square root V diag(sqrt(max(lambda, 0))) V^H. Eigenvalues below
    // -1e-10 * lambda_max raise NotPsdError; small negatives are clamped to 0.
    cx_mat psd_sqrt(const cx_mat &m);

    // Pseudo-inverse square root: eigenvalues <= rel_tol * lambda_max map to 0,
    // the rest to lambda^{-1/2}.
    cx_mat psd_inv_sqrt(const cx_mat &m, double rel_tol = 1e-10);

    // Throws ConvergenceError when the underlying iteration fails.
    SvdResult svd(const cx_mat &m);

    // Unitary DFT matrix, entry (r, c) = exp(-j 2 pi r c / p) / sqrt(p).
    // Rotating any diagonal matrix by it equalizes the diagonal.
    cx_mat dft_matrix(uword p);

    // Solves m * x = rhs for Hermitian positive definite m. Rejects systems
    // whose smallest eigenvalue is below 1e-14 of the largest (SingularError).
    cx_mat solve_hermitian(const cx_mat &m, const cx_mat &rhs);

} // namespace isacq

#endif
