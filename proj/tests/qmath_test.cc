// Copyright 2026 The channel-mixer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <numbers>

#include "chmix/circuits.h"
#include "chmix/qmath.h"
#include "oracles.h"
#include "test_util.h"

namespace chmix {
namespace {

ComplexMatrix bell_projector() {
    ComplexMatrix w = ComplexMatrix::Zero(4, 4);
    w(0, 0) = w(0, 3) = w(3, 0) = w(3, 3) = 0.5;
    return w;
}

TEST(HermitianEigen, IdentityAndDiagonal) {
    auto e = hermitian_eigen(ComplexMatrix::Identity(4, 4));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(e.eigenvalues(k), 1.0, 1e-15);

    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d.diagonal() << 0.5, -0.25, 0.0, 0.75;
    auto f = hermitian_eigen(d);
    const double expected[] = {-0.25, 0.0, 0.5, 0.75};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(f.eigenvalues(k), expected[k], 1e-15);
}

TEST(HermitianEigen, BellProjectorMatchesCharacteristicPolynomial) {
    ComplexMatrix w = bell_projector();
    auto e = hermitian_eigen(w);
    std::vector<double> roots(e.eigenvalues.data(), e.eigenvalues.data() + 4);
    EXPECT_LT(oracle::max_coeff_gap(oracle::char_poly(w), oracle::poly_from_roots(roots)), 1e-12);
    EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-15);
    EXPECT_NEAR(e.eigenvalues(3), 1.0, 1e-15);
}

TEST(HermitianEigen, RandomMatricesAgreeWithCharacteristicPolynomial) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexMatrix m = testutil::random_hermitian(rng, 4);
        auto e = hermitian_eigen(m);
        std::vector<double> roots(e.eigenvalues.data(), e.eigenvalues.data() + 4);
        EXPECT_LT(oracle::max_coeff_gap(oracle::char_poly(m), oracle::poly_from_roots(roots)), 1e-9);
        for (int k = 1; k < 4; ++k) EXPECT_LE(e.eigenvalues(k - 1), e.eigenvalues(k));
        ComplexMatrix back = *e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors->adjoint();
        EXPECT_LT((back - m).norm(), 1e-10);
        EXPECT_NEAR(e.eigenvalues.sum(), m.trace().real(), 1e-10);
    }
}

TEST(HermitianEigen, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1e-6;
    EXPECT_ERROR_KIND(hermitian_eigen(m), ErrorKind::NonHermitianInput);
    m(1, 0) = 1e-6 + 5e-10;
    EXPECT_NO_THROW(hermitian_eigen(m));
}

TEST(HermitianFrom, BitwiseHermitian) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix h = hermitian_from(testutil::random_matrix(rng, 4));
        EXPECT_EQ(hermitian_deviation(h), 0.0);
    }
}

TEST(PseudoInverse, Basics) {
    EXPECT_LT((pseudo_inverse(ComplexMatrix::Identity(3, 3), 1e-10) - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    ComplexMatrix p = pseudo_inverse(d, 1e-12);
    EXPECT_NEAR(std::abs(p(0, 0) - 0.5), 0.0, 1e-15);
    EXPECT_EQ(std::abs(p(1, 1)), 0.0);
}

TEST(PseudoInverse, InverseAndIdempotenceOnFullRank) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix m = testutil::random_matrix(rng, 4);
        ComplexMatrix p = pseudo_inverse(m, 1e-10);
        EXPECT_LT((m * p - ComplexMatrix::Identity(4, 4)).norm(), 1e-8);
        EXPECT_LT((pseudo_inverse(p, 1e-10) - m).norm(), 1e-8);
    }
}

TEST(PseudoInverse, ResolvesTinySingularValues) {
    // Singular values 1 and 1e-9 sit on either side of a 1e-10 relative
    // cutoff only if they are computed without squaring.
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-9;
    EXPECT_EQ(numerical_rank(m, 1e-10), 2);
    EXPECT_EQ(numerical_rank(m, 1e-8), 1);
}

TEST(TraceNorm, Basics) {
    EXPECT_NEAR(trace_norm(ComplexMatrix::Identity(4, 4)), 4.0, 1e-14);
    EXPECT_NEAR(trace_norm(bell_projector()), 1.0, 1e-14);
}

TEST(TraceNorm, UnitaryGatesHaveTraceNormDim) {
    for (const Gate &g : {Gate::ry(1, 0.7), Gate::cx(0, 2), Gate::cy(2, 1), Gate::cz(1, 0), Gate::cry(2, 0, 1.3)}) {
        ComplexMatrix u = gate_unitary(g, 3);
        EXPECT_NEAR(trace_norm(u), 8.0, 1e-12);
    }
}

TEST(Kron, Examples) {
    EXPECT_EQ(kron(Matrix2c::Identity(), Matrix2c::Identity()), ComplexMatrix::Identity(4, 4));

    Matrix2c g2 = Matrix2c::Zero(), g3 = Matrix2c::Zero();
    g2(0, 1) = 1.0;
    g3(1, 0) = 1.0;
    ComplexMatrix k = kron(g2, g3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), (i == 1 && j == 2) ? cplx(1.0) : cplx(0.0));

    ComplexMatrix xy = kron(pauli(1), pauli(2));
    const cplx i(0.0, 1.0);
    EXPECT_EQ(xy(0, 3), -i);
    EXPECT_EQ(xy(1, 2), i);
    EXPECT_EQ(xy(2, 1), -i);
    EXPECT_EQ(xy(3, 0), i);
    EXPECT_EQ(xy.cwiseAbs().sum(), 4.0);
}

TEST(Kron, AssociativeAndMatchesOracle) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix a = testutil::random_matrix(rng, 2);
        ComplexMatrix b = testutil::random_matrix(rng, 2);
        ComplexMatrix c = testutil::random_matrix(rng, 2);
        EXPECT_LT((kron(kron(a, b), c) - kron(a, kron(b, c))).norm(), 1e-13);
        EXPECT_EQ(kron(a, b), oracle::kron(a, b));
    }
}

TEST(PsdSqrt, SquaresBackAndRejectsNegative) {
    std::mt19937_64 rng(21);
    ComplexMatrix a = testutil::random_matrix(rng, 4);
    ComplexMatrix psd = a * a.adjoint();
    auto root = psd_sqrt(psd, 1e-9);
    ASSERT_TRUE(root.has_value());
    EXPECT_LT((*root * *root - psd).norm(), 1e-10);

    ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
    neg(1, 1) = -1e-6;
    EXPECT_FALSE(psd_sqrt(neg, 1e-9).has_value());
    neg(1, 1) = -1e-12;
    EXPECT_TRUE(psd_sqrt(neg, 1e-9).has_value());
}

TEST(Pauli, AlgebraAgainstOracle) {
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(ComplexMatrix(pauli(k)), oracle::pauli(k));
        EXPECT_LT((pauli(k) * pauli(k) - Matrix2c::Identity()).norm(), 1e-15);
    }
    const cplx i(0.0, 1.0);
    EXPECT_LT((pauli(1) * pauli(2) - i * pauli(3)).norm(), 1e-15);
    EXPECT_LT((pauli(3) * pauli(1) - i * pauli(2)).norm(), 1e-15);
}

}  // namespace
}  // namespace chmix
