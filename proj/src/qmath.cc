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

#include "chmix/qmath.h"

#include <array>
#include <cmath>
#include <string>

#include "chmix/error.h"

namespace chmix {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonHermitianInput: return "NonHermitianInput";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::NegativeTime: return "NegativeTime";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::SingularEigenvalue: return "SingularEigenvalue";
        case ErrorKind::EtaOutOfRange: return "EtaOutOfRange";
        case ErrorKind::ProbOutOfRange: return "ProbOutOfRange";
        case ErrorKind::InvalidCircuit: return "InvalidCircuit";
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::NonPositiveInput: return "NonPositiveInput";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

double hermitian_deviation(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitian_from(const ComplexMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out(i, j) = (m(i, j) + std::conj(m(j, i))) * 0.5;
        }
    }
    return out;
}

EigenResult hermitian_eigen(const ComplexMatrix &m, bool with_vectors) {
    double dev = hermitian_deviation(m);
    if (!(dev <= kHermitianTol)) {
        throw Error(ErrorKind::NonHermitianInput,
                    "matrix deviates from its adjoint by " + std::to_string(dev));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        hermitian_from(m), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    EigenResult result;
    result.eigenvalues = solver.eigenvalues();
    if (with_vectors) {
        result.eigenvectors = solver.eigenvectors();
    }
    return result;
}

Eigen::VectorXd singular_values(const ComplexMatrix &m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

ComplexMatrix pseudo_inverse(const ComplexMatrix &m, double cutoff) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd &sv = svd.singularValues();
    ComplexMatrix inv = ComplexMatrix::Zero(m.cols(), m.rows());
    if (sv.size() == 0 || sv(0) == 0.0) {
        return inv;
    }
    double threshold = cutoff * sv(0);
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) < threshold || sv(k) == 0.0) {
            continue;
        }
        inv += (svd.matrixV().col(k) / sv(k)) * svd.matrixU().col(k).adjoint();
    }
    return inv;
}

int numerical_rank(const ComplexMatrix &m, double cutoff) {
    Eigen::VectorXd sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) >= cutoff * sv(0) && sv(k) > 0.0) {
            ++rank;
        }
    }
    return rank;
}

double trace_norm(const ComplexMatrix &m) { return singular_values(m).sum(); }

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::optional<ComplexMatrix> psd_sqrt(const ComplexMatrix &m, double clip) {
    EigenResult eig = hermitian_eigen(m);
    Eigen::VectorXd roots(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        double lambda = eig.eigenvalues(k);
        if (lambda < -clip) {
            return std::nullopt;
        }
        roots(k) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    const ComplexMatrix &v = *eig.eigenvectors;
    return ComplexMatrix(v * roots.cast<cplx>().asDiagonal() * v.adjoint());
}

const Matrix2c &pauli(int index) {
    static const std::array<Matrix2c, 4> kPaulis = [] {
        std::array<Matrix2c, 4> p;
        const cplx i(0.0, 1.0);
        p[0] << 1, 0, 0, 1;
        p[1] << 0, 1, 1, 0;
        p[2] << 0, -i, i, 0;
        p[3] << 1, 0, 0, -1;
        return p;
    }();
    return kPaulis.at(static_cast<std::size_t>(index));
}

}  // namespace chmix
