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

#include <catch2/catch_amalgamated.hpp>

#include "isacq/mat_core.hpp"
#include "test_util.hpp"

using namespace isacq;
using test::random_complex;
using test::random_psd;
using test::rel_fro_error;

TEST_CASE("kron basics", "[mat_core]")
{
    cx_mat scalar(1, 1);
    scalar(0, 0) = 2.0;
    cx_mat eye2 = arma::eye<cx_mat>(2, 2);
    CHECK(arma::abs(isacq::kron(scalar, eye2) - 2.0 * eye2).max() == 0.0);

    RngStream rng(11, "kron");
    cx_mat m = random_complex(3, 4, rng);
    CHECK(arma::abs(isacq::kron(arma::eye<cx_mat>(1, 1), m) - m).max() == 0.0);
}

TEST_CASE("kron mixed-product identity", "[mat_core]")
{
    RngStream rng(12, "kron-mixed");
    for (int rep = 0; rep < 20; rep++)
    {
        cx_mat a = random_complex(2, 2, rng), b = random_complex(2, 2, rng);
        cx_mat c = random_complex(2, 2, rng), d = random_complex(2, 2, rng);
        CHECK(arma::abs(isacq::kron(a, b) * isacq::kron(c, d) - isacq::kron(a * c, b * d)).max() < 1e-12);
    }
}

TEST_CASE("kron bilinearity", "[mat_core]")
{
    RngStream rng(13, "kron-bilinear");
    cx_mat a = random_complex(2, 3, rng), a2 = random_complex(2, 3, rng);
    cx_mat b = random_complex(3, 2, rng);
    cx_double alpha = rng.complex_gaussian();
    CHECK(arma::abs(isacq::kron(a + alpha * a2, b) - (isacq::kron(a, b) + alpha * isacq::kron(a2, b))).max() < 1e-12);
}

TEST_CASE("hermitian_eig on identity and diagonal", "[mat_core]")
{
    HermitianEig e = hermitian_eig(arma::eye<cx_mat>(3, 3));
    CHECK(arma::abs(e.values - arma::ones<vec>(3)).max() < 1e-14);

    cx_mat d = arma::diagmat(cx_vec{cx_double(1.0, 0.0), cx_double(3.0, 0.0)});
    HermitianEig ed = hermitian_eig(d);
    CHECK(ed.values(0) == Catch::Approx(3.0));
    CHECK(ed.values(1) == Catch::Approx(1.0));
    // descending order maps the first eigenvector onto the second axis
    CHECK(std::abs(ed.vectors(1, 0)) == Catch::Approx(1.0));
    CHECK(std::abs(ed.vectors(0, 1)) == Catch::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstruction", "[mat_core]")
{
    RngStream rng(14, "eig-recon");
    for (uword n : {5, 16, 64})
    {
        cx_mat m = test::random_hermitian(n, rng);
        HermitianEig e = hermitian_eig(m);
        CHECK(rel_fro_error(e.vectors * arma::diagmat(e.values) * e.vectors.t(), m) < 1e-9);
        CHECK(e.values.is_sorted("descend"));
        for (uword i = 0; i < n; i++)
            CHECK(arma::norm(e.vectors.col(i)) == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("hermitian_eig rejects asymmetric input", "[mat_core]")
{
    cx_mat m(2, 2, arma::fill::zeros);
    m(0, 1) = cx_double(1.0, 0.0);
    m(1, 0) = cx_double(0.5, 0.0);
    CHECK_THROWS_AS(hermitian_eig(m), NonHermitianError);
}

TEST_CASE("psd_sqrt basics", "[mat_core]")
{
    CHECK(arma::abs(psd_sqrt(arma::eye<cx_mat>(4, 4)) - arma::eye<cx_mat>(4, 4)).max() < 1e-12);

    cx_mat d = arma::diagmat(cx_vec{cx_double(4.0, 0.0), cx_double(9.0, 0.0)});
    cx_mat want = arma::diagmat(cx_vec{cx_double(2.0, 0.0), cx_double(3.0, 0.0)});
    CHECK(arma::abs(psd_sqrt(d) - want).max() < 1e-12);
}

TEST_CASE("psd_sqrt defining property", "[mat_core]")
{
    RngStream rng(15, "psd-sqrt");
    for (uword n : {3, 8, 20})
    {
        cx_mat r = random_psd(n, rng);
        cx_mat s = psd_sqrt(r);
        CHECK(rel_fro_error(s * s.t(), r) < 1e-9);
        // output stays Hermitian PSD
        CHECK(arma::abs(s - s.t()).max() < 1e-10);
        HermitianEig e = hermitian_eig(s);
        CHECK(e.values.min() > -1e-10 * std::max(e.values.max(), 1.0));
    }
}

TEST_CASE("psd_sqrt rejects indefinite input", "[mat_core]")
{
    cx_mat d = arma::diagmat(cx_vec{cx_double(1.0, 0.0), cx_double(-1.0, 0.0)});
    CHECK_THROWS_AS(psd_sqrt(d), NotPsdError);
}

TEST_CASE("psd_inv_sqrt pseudo-inverse convention", "[mat_core]")
{
    CHECK(arma::abs(psd_inv_sqrt(arma::eye<cx_mat>(3, 3)) - arma::eye<cx_mat>(3, 3)).max() <
          1e-12);

    cx_mat d = arma::diagmat(cx_vec{cx_double(4.0, 0.0), cx_double(0.0, 0.0)});
    cx_mat want = arma::diagmat(cx_vec{cx_double(0.5, 0.0), cx_double(0.0, 0.0)});
    CHECK(arma::abs(psd_inv_sqrt(d) - want).max() < 1e-12);
}

TEST_CASE("psd_inv_sqrt inverts psd_sqrt on full-rank input", "[mat_core]")
{
    RngStream rng(16, "psd-inv");
    cx_mat r = random_psd(6, rng) + arma::eye<cx_mat>(6, 6); // keep well-conditioned
    cx_mat prod = psd_inv_sqrt(r) * psd_sqrt(r);
    CHECK(arma::abs(prod - arma::eye<cx_mat>(6, 6)).max() < 1e-8);
}

TEST_CASE("svd basics", "[mat_core]")
{
    cx_mat d = arma::diagmat(cx_vec{cx_double(3.0, 0.0), cx_double(1.0, 0.0)});
    SvdResult s = isacq::svd(d);
    CHECK(s.s(0) == Catch::Approx(3.0));
    CHECK(s.s(1) == Catch::Approx(1.0));

    SvdResult z = isacq::svd(arma::zeros<cx_mat>(3, 2));
    CHECK(z.s.max() == 0.0);
}

TEST_CASE("svd reconstruction", "[mat_core]")
{
    RngStream rng(17, "svd-recon");
    for (auto [p, n] : std::vector<std::pair<uword, uword>>{{4, 6}, {6, 4}, {64, 32}})
    {
        cx_mat m = random_complex(p, n, rng);
        SvdResult s = isacq::svd(m);
        cx_mat sigma(p, n, arma::fill::zeros);
        for (uword i = 0; i < s.s.n_elem; i++)
            sigma(i, i) = s.s(i);
        CHECK(rel_fro_error(s.u * sigma * s.v.t(), m) < 1e-9);
        CHECK(s.s.is_sorted("descend"));
        CHECK(s.s.min() >= 0.0);
    }
}

TEST_CASE("dft_matrix values and unitarity", "[mat_core]")
{
    cx_mat u1 = dft_matrix(1);
    CHECK(std::abs(u1(0, 0) - cx_double(1.0, 0.0)) < 1e-15);

    cx_mat u2 = dft_matrix(2);
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(u2(0, 0) - cx_double(s, 0.0)) < 1e-15);
    CHECK(std::abs(u2(1, 1) - cx_double(-s, 0.0)) < 1e-15);

    for (uword p : {2, 3, 8, 20})
    {
        cx_mat u = dft_matrix(p);
        CHECK(arma::abs(u * u.t() - arma::eye<cx_mat>(p, p)).max() < 1e-12);
    }
}

TEST_CASE("dft rotation equalizes any real diagonal", "[mat_core]")
{
    RngStream rng(18, "dft-diag");
    cx_mat u = dft_matrix(8);
    vec d(8);
    for (uword i = 0; i < 8; i++)
        d(i) = rng.uniform01() * 10.0;
    cx_mat rotated = u * arma::diagmat(arma::conv_to<cx_vec>::from(d)) * u.t();
    vec diag = arma::real(rotated.diag());
    double mean = arma::accu(d) / 8.0;
    CHECK(arma::abs(diag - mean).max() < 1e-12);
}

TEST_CASE("solve_hermitian basics", "[mat_core]")
{
    RngStream rng(19, "solve");
    cx_mat b = random_complex(4, 2, rng);
    CHECK(arma::abs(solve_hermitian(arma::eye<cx_mat>(4, 4), b) - b).max() < 1e-12);
    CHECK(arma::abs(solve_hermitian(2.0 * arma::eye<cx_mat>(4, 4), b) - 0.5 * b).max() < 1e-12);
}

TEST_CASE("solve_hermitian residual on random PD systems", "[mat_core]")
{
    RngStream rng(20, "solve-pd");
    for (int rep = 0; rep < 5; rep++)
    {
        cx_mat m = random_psd(8, rng) + arma::eye<cx_mat>(8, 8);
        cx_mat rhs = random_complex(8, 3, rng);
        cx_mat x = solve_hermitian(m, rhs);
        CHECK(arma::norm(m * x - rhs, "fro") / arma::norm(rhs, "fro") < 1e-8);
    }
}

TEST_CASE("solve_hermitian conditioning guard", "[mat_core]")
{
    cx_mat m = arma::diagmat(cx_vec{cx_double(1.0, 0.0), cx_double(1e-16, 0.0)});
    cx_mat rhs = arma::ones<cx_mat>(2, 1);
    CHECK_THROWS_AS(solve_hermitian(m, rhs), SingularError);
}
