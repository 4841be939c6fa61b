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

// Small dense complex linear algebra. Every matrix in this project is at most
// 16x16 (a four-qubit register), so everything here favours accuracy over
// speed.

#ifndef CHMIX_QMATH_H
#define CHMIX_QMATH_H

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace chmix {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr double kHermitianTol = 1e-9;

struct EigenResult {
    Eigen::VectorXd eigenvalues;                 // ascending
    std::optional<ComplexMatrix> eigenvectors;   // columns, orthonormal
};

/// Largest entry of |m - m^dagger|.
double hermitian_deviation(const ComplexMatrix &m);

/// (m + m^dagger) / 2. The result is exactly Hermitian (bitwise).
ComplexMatrix hermitian_from(const ComplexMatrix &m);

/// Throws Error(NonHermitianInput) if `m` is not Hermitian within kHermitianTol.
EigenResult hermitian_eigen(const ComplexMatrix &m, bool with_vectors = true);

/// Singular values, descending.
Eigen::VectorXd singular_values(const ComplexMatrix &m);

/// Moore-Penrose inverse; singular values below cutoff * sigma_max are dropped.
ComplexMatrix pseudo_inverse(const ComplexMatrix &m, double cutoff);

/// Number of singular values at or above cutoff * sigma_max.
int numerical_rank(const ComplexMatrix &m, double cutoff);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &m);

/// Block (i, j) of the result is a(i, j) * b.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-clip, 0) are treated as zero; anything more negative is reported through
/// the return value being empty.
std::optional<ComplexMatrix> psd_sqrt(const ComplexMatrix &m, double clip);

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
const Matrix2c &pauli(int index);

}  // namespace chmix

#endif
