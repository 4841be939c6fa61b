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

#include "chmix/divisibility.h"

#include <cmath>
#include <string>

#include "chmix/error.h"

namespace chmix {

namespace {

using Matrix16c = Eigen::Matrix<cplx, 16, 16>;
using Vector16c = Eigen::Matrix<cplx, 16, 1>;

Matrix2c matrix_unit(int alpha) {
    Matrix2c g = Matrix2c::Zero();
    g(alpha >> 1, alpha & 1) = 1.0;
    return g;
}

// B(a*4 + b, m*4 + n) = Tr[G_a^dagger sigma_m G_b sigma_n], so that
// vec(F) = B vec(chi) with both vectorized row-major.
struct ChiTransferMap {
    Matrix16c forward;
    Matrix16c inverse;

    ChiTransferMap() {
        for (int a = 0; a < 4; ++a) {
            Matrix2c ga_dag = matrix_unit(a).adjoint();
            for (int b = 0; b < 4; ++b) {
                Matrix2c gb = matrix_unit(b);
                for (int m = 0; m < 4; ++m) {
                    for (int n = 0; n < 4; ++n) {
                        forward(a * 4 + b, m * 4 + n) = (ga_dag * pauli(m) * gb * pauli(n)).trace();
                    }
                }
            }
        }
        inverse = forward.fullPivLu().inverse();
    }
};

const ChiTransferMap &chi_transfer_map() {
    static const ChiTransferMap kMap;
    return kMap;
}

Vector16c vec(const Matrix4c &m) {
    Vector16c v;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            v(i * 4 + j) = m(i, j);
        }
    }
    return v;
}

Matrix4c unvec(const Vector16c &v) {
    Matrix4c m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m(i, j) = v(i * 4 + j);
        }
    }
    return m;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::CPdivisibleStep: return "CPdivisibleStep";
        case Verdict::NotCP: return "NotCP";
        case Verdict::SingularIntermediate: return "SingularIntermediate";
    }
    return "Unknown";
}

TransferMatrix transfer_from_chi(const ChiMatrix &chi) {
    return {unvec(chi_transfer_map().forward * vec(chi.mat))};
}

ChiMatrix chi_from_transfer(const TransferMatrix &f) { return {unvec(chi_transfer_map().inverse * vec(f.mat))}; }

TransferMatrix transfer_from_outputs(const std::array<Matrix2c, 4> &outputs) {
    const cplx i(0.0, 1.0);
    std::array<Matrix2c, 4> images;
    images[0] = outputs[0];
    images[3] = outputs[1];
    images[1] = outputs[2] + i * outputs[3] - (1.0 + i) * 0.5 * (outputs[0] + outputs[1]);
    images[2] = images[1].adjoint();
    TransferMatrix f;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            f.mat(a, b) = images[b](a >> 1, a & 1);
        }
    }
    return f;
}

Matrix2c apply_transfer(const TransferMatrix &f, const Matrix2c &rho) {
    Eigen::Vector4cd v(rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1));
    Eigen::Vector4cd out = f.mat * v;
    Matrix2c r;
    r << out(0), out(1), out(2), out(3);
    return r;
}

IntermediateMap intermediate_transfer(const TransferMatrix &f_t, const TransferMatrix &f_s, double cutoff) {
    IntermediateMap im;
    im.singular = numerical_rank(f_s.mat, cutoff) < 4;
    im.transfer.mat = f_t.mat * pseudo_inverse(f_s.mat, cutoff);
    return im;
}

ChoiMatrix choi_from_transfer(const TransferMatrix &f) {
    ChoiMatrix w;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (f.mat(a, b) == 0.0) {
                continue;
            }
            w.mat += 0.5 * f.mat(a, b) * kron(matrix_unit(b), matrix_unit(a));
        }
    }
    return w;
}

CpCheck cp_verdict(const ChoiMatrix &w, double eps_class, double eps_tp) {
    CpCheck check;
    check.min_eig = hermitian_eigen(w.mat, false).eigenvalues(0);
    check.trace_norm = trace_norm(w.mat);
    bool not_cp = check.min_eig < -eps_class || std::abs(check.trace_norm - 1.0) > eps_tp;
    check.verdict = not_cp ? Verdict::NotCP : Verdict::CPdivisibleStep;
    return check;
}

double process_fidelity(const ChiMatrix &chi, const ChiMatrix &chi_id) {
    auto root = psd_sqrt(chi.mat, kFidelityClip);
    if (!root || hermitian_eigen(chi_id.mat, false).eigenvalues(0) < -kFidelityClip) {
        throw Error(ErrorKind::NonPositiveInput, "fidelity needs positive semidefinite chi matrices");
    }
    double denom = chi.mat.trace().real() * chi_id.mat.trace().real();
    if (!(denom > 0.0)) {
        throw Error(ErrorKind::NonPositiveInput, "chi matrix with zero trace");
    }
    ComplexMatrix inner = hermitian_from(*root * chi_id.mat * *root);
    Eigen::VectorXd lambda = hermitian_eigen(inner, false).eigenvalues;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        sum += lambda(k) > 0.0 ? std::sqrt(lambda(k)) : 0.0;
    }
    return sum * sum / denom;
}

DivisibilityReport intermediate_report(const ChiMatrix &chi_t, const ChiMatrix &chi_s, double t, double s,
                                       const Tolerances &tol) {
    IntermediateMap im = intermediate_transfer(transfer_from_chi(chi_t), transfer_from_chi(chi_s), tol.pinv_cutoff);
    ChoiMatrix w = choi_from_transfer(im.transfer);
    w.mat = hermitian_from(w.mat);
    CpCheck check = cp_verdict(w, tol.eps_class, tol.eps_tp);
    DivisibilityReport report;
    report.s = s;
    report.t = t;
    report.min_eig = check.min_eig;
    report.trace_norm = check.trace_norm;
    report.singular = im.singular;
    report.verdict = im.singular ? Verdict::SingularIntermediate : check.verdict;
    return report;
}

std::vector<DivisibilityReport> markovianity_scan(const std::function<ChiMatrix(double)> &chi_at, double s,
                                                  std::span<const double> t_grid, const Tolerances &tol) {
    ChiMatrix chi_s = chi_at(s);
    std::vector<DivisibilityReport> reports;
    reports.reserve(t_grid.size());
    for (double t : t_grid) {
        if (t < s) {
            throw Error(ErrorKind::ConfigError, "scan times must not precede s");
        }
        reports.push_back(intermediate_report(chi_at(t), chi_s, t, s, tol));
    }
    return reports;
}

std::vector<DivisibilityReport> markovianity_scan(const ChannelFamily &family, double s,
                                                  std::span<const double> t_grid, const Tolerances &tol) {
    return markovianity_scan([&family](double t) { return chi_ideal(family, t); }, s, t_grid, tol);
}

bool is_markovian(std::span<const DivisibilityReport> reports) {
    for (const auto &r : reports) {
        if (r.verdict == Verdict::NotCP) {
            return false;
        }
    }
    return true;
}

}  // namespace chmix
