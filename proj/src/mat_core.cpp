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

#include "isacq/mat_core.hpp"

#include <cmath>
#include <numbers>

namespace isacq
{

    cx_mat kron(const cx_mat &a, const cx_mat &b)
    {
        return arma::kron(a, b);
    }

    static void check_hermitian(const cx_mat &m, double tol, const char *who)
    {
        if (!m.is_square())
            throw NonHermitianError(std::string(who) + ": matrix is not square");
        double dev = arma::abs(m - m.t()).max();
        if (dev > tol)
            throw NonHermitianError(std::string(who) + ": symmetry deviation " + std::to_string(dev));
    }

    HermitianEig hermitian_eig(const cx_mat &m, double herm_tol)
    {
        check_hermitian(m, herm_tol, "hermitian_eig");

        cx_mat sym = 0.5 * (m + m.t());
        vec values;
        cx_mat vectors;
        if (!arma::eig_sym(values, vectors, sym))
            throw ConvergenceError("hermitian_eig: eigendecomposition failed");

        // armadillo returns ascending order; flip to descending
        HermitianEig out;
        out.values = arma::reverse(values);
        out.vectors = arma::fliplr(vectors);
        return out;
    }

    // Shared by psd_sqrt / psd_inv_sqrt: eigendecompose and validate PSD-ness.
    static HermitianEig psd_eig(const cx_mat &m, const char *who)
    {
        HermitianEig h = hermitian_eig(m);
        double lam_max = h.values.n_elem ? h.values.max() : 0.0;
        double floor_neg = -1e-10 * std::max(lam_max, 0.0);
        if (h.values.min() < floor_neg)
            throw NotPsdError(std::string(who) + ": eigenvalue " + std::to_string(h.values.min()) +
                              " below PSD tolerance");
        return h;
    }

    cx_mat psd_sqrt(const cx_mat &m)
    {
        HermitianEig h = psd_eig(m, "psd_sqrt");
        // eigenvalues within the clamp band around zero are treated as exact
        // zeros, so exactly singular inputs stay singular through the root
        double lam_max = h.values.n_elem ? std::max(h.values.max(), 0.0) : 0.0;
        vec roots(h.values.n_elem, arma::fill::zeros);
        for (uword i = 0; i < h.values.n_elem; i++)
            if (h.values(i) > 1e-10 * lam_max)
                roots(i) = std::sqrt(h.values(i));
        return h.vectors * arma::diagmat(roots) * h.vectors.t();
    }

    cx_mat psd_inv_sqrt(const cx_mat &m, double rel_tol)
    {
        HermitianEig h = psd_eig(m, "psd_inv_sqrt");
        double lam_max = h.values.n_elem ? std::max(h.values.max(), 0.0) : 0.0;
        vec inv_roots(h.values.n_elem, arma::fill::zeros);
        for (uword i = 0; i < h.values.n_elem; i++)
            if (h.values(i) > rel_tol * lam_max)
                inv_roots(i) = 1.0 / std::sqrt(h.values(i));
        return h.vectors * arma::diagmat(inv_roots) * h.vectors.t();
    }

    SvdResult svd(const cx_mat &m)
    {
        SvdResult out;
        if (!arma::svd(out.u, out.s, out.v, m, "std"))
            throw ConvergenceError("svd: factorization did not converge");
        return out;
    }

    cx_mat dft_matrix(uword p)
    {
        if (p < 1)
            throw DimensionMismatch("dft_matrix: size must be >= 1");
        cx_mat u(p, p);
        double scale = 1.0 / std::sqrt(double(p));
        for (uword r = 0; r < p; r++)
            for (uword c = 0; c < p; c++)
            {
                double ang = -2.0 * std::numbers::pi * double(r) * double(c) / double(p);
                u(r, c) = scale * cx_double(std::cos(ang), std::sin(ang));
            }
        return u;
    }

    cx_mat solve_hermitian(const cx_mat &m, const cx_mat &rhs)
    {
        if (m.n_rows != rhs.n_rows)
            throw DimensionMismatch("solve_hermitian: rhs row count mismatch");
        HermitianEig h = hermitian_eig(m);
        double lam_max = h.values.max();
        if (lam_max <= 0.0 || h.values.min() < 1e-14 * lam_max)
            throw SingularError("solve_hermitian: conditioning guard tripped");
        return h.vectors * (arma::diagmat(1.0 / h.values) * (h.vectors.t() * rhs));
    }

} // namespace isacq
