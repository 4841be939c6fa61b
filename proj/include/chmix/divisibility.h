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

// CP-divisibility test for single-qubit dynamical maps.
//
// A map is represented by its transfer matrix F in the matrix-unit basis
// G1 = |0><0|, G2 = |0><1|, G3 = |1><0|, G4 = |1><1|, acting on row-major
// stacked density matrices (rho00, rho01, rho10, rho11). The intermediate
// map between times s <= t is F(t) F(s)^+, and it is completely positive iff
// its (trace-one normalized) Choi matrix is PSD.

#ifndef CHMIX_DIVISIBILITY_H
#define CHMIX_DIVISIBILITY_H

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chmix/channels.h"
#include "chmix/qmath.h"

namespace chmix {

struct TransferMatrix {
    Matrix4c mat = Matrix4c::Identity();
};

struct ChoiMatrix {
    Matrix4c mat = Matrix4c::Zero();
};

enum class Verdict { CPdivisibleStep, NotCP, SingularIntermediate };

std::string_view to_string(Verdict verdict);

struct Tolerances {
    double eps_class = 1e-6;
    double eps_tp = 1e-6;
    double pinv_cutoff = 1e-10;
};

struct DivisibilityReport {
    double s = 0.0;
    double t = 0.0;
    double min_eig = 0.0;
    std::optional<double> min_eig_std;
    double trace_norm = 1.0;
    Verdict verdict = Verdict::CPdivisibleStep;
    bool singular = false;
};

TransferMatrix transfer_from_chi(const ChiMatrix &chi);

/// Inverse of transfer_from_chi.
ChiMatrix chi_from_transfer(const TransferMatrix &f);

/// Transfer matrix from the map's outputs on |0><0|, |1><1|, |+><+|, |+y><+y|.
/// Lambda(G2) = Lambda(+) + i Lambda(+y) - (1+i)/2 (Lambda(G1) + Lambda(G4))
/// and Lambda(G3) = Lambda(G2)^dagger.
TransferMatrix transfer_from_outputs(const std::array<Matrix2c, 4> &outputs);

/// F |rho>> unstacked back into a 2x2 matrix.
Matrix2c apply_transfer(const TransferMatrix &f, const Matrix2c &rho);

struct IntermediateMap {
    TransferMatrix transfer;
    bool singular = false;  // F(s) rank-deficient at the cutoff
};

IntermediateMap intermediate_transfer(const TransferMatrix &f_t, const TransferMatrix &f_s, double cutoff);

/// W = 1/2 sum_ab F(a, b) G_b (x) G_a, i.e. (1 (x) Lambda)|b00><b00|.
ChoiMatrix choi_from_transfer(const TransferMatrix &f);

struct CpCheck {
    double min_eig = 0.0;
    double trace_norm = 0.0;
    Verdict verdict = Verdict::CPdivisibleStep;
};

CpCheck cp_verdict(const ChoiMatrix &w, double eps_class, double eps_tp);

inline constexpr double kFidelityClip = 1e-9;

/// Tr[(sqrt(chi) chi_id sqrt(chi))^(1/2)]^2 / (Tr chi Tr chi_id). Eigenvalues
/// in [-1e-9, 0) are clipped; anything more negative throws NonPositiveInput.
double process_fidelity(const ChiMatrix &chi, const ChiMatrix &chi_id);

/// Full intermediate-map check between two processes.
DivisibilityReport intermediate_report(const ChiMatrix &chi_t, const ChiMatrix &chi_s, double t, double s,
                                       const Tolerances &tol);

/// One report per t in `t_grid` for the intermediate map from s to t.
std::vector<DivisibilityReport> markovianity_scan(const std::function<ChiMatrix(double)> &chi_at, double s,
                                                  std::span<const double> t_grid, const Tolerances &tol);

std::vector<DivisibilityReport> markovianity_scan(const ChannelFamily &family, double s,
                                                  std::span<const double> t_grid, const Tolerances &tol);

/// Non-Markovian iff any report is NotCP. Singular steps carry no verdict.
bool is_markovian(std::span<const DivisibilityReport> reports);

}  // namespace chmix

#endif
