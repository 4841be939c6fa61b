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


// Single-qubit process tomography and maximum-likelihood chi reconstruction.
//
// Counts are indexed nu = 4 * input + output (0-based), with inputs and
// measured projectors both ordered |0>, |1>, |+>, |+y>. Each count is a
// separate run of `shots` shots, except that the |0>/|1> pair of an input
// comes from the same Z-basis run.

#ifndef CHMIX_RECONSTRUCTION_H
#define CHMIX_RECONSTRUCTION_H

#include <array>
#include <cstdint>
#include <vector>

#include "chmix/channels.h"
#include "chmix/circuits.h"
#include "chmix/qmath.h"

namespace chmix {

inline constexpr int kNumCounts = 16;

struct CountsVector {
    std::array<double, kNumCounts> n{};
    std::int64_t shots = 0;
    std::uint64_t seed = 0;

    double &operator[](int nu) { return n[nu]; }
    double operator[](int nu) const { return n[nu]; }
};

struct ProjectorPair {
    Matrix2c input;   // P_{nu,1}: prepared state
    Matrix2c output;  // P_{nu,2}: measured projector
};

/// H = |0><0|, V = |1><1|, D = |+><+|, R = |+y><+y| paired per count index.
const std::array<ProjectorPair, kNumCounts> &projector_array();

/// Counts for the channel implemented by `circuit`. exact = true returns
/// shots * Tr[P rho] without sampling.
CountsVector run_tomography(const Circuit &circuit, std::int64_t shots, std::uint64_t seed, bool exact);

/// Same as run_tomography, starting from the four channel outputs.
CountsVector counts_from_outputs(const std::array<Matrix2c, 4> &outputs, std::int64_t shots, std::uint64_t seed,
                                 bool exact);

/// Linear-inversion state estimates, one per input. Hermitian and trace one,
/// not necessarily positive.
std::array<Matrix2c, 4> states_from_counts(const CountsVector &counts);

/// chi_p from the four output states; may be non-physical.
ChiMatrix chi_linear_inversion(const std::array<Matrix2c, 4> &states);

/// shots * Tr[P_out sum_mn chi_mn s_m P_in s_n] for every count index.
std::array<double, kNumCounts> expected_counts(const ChiMatrix &chi, double shots);

/// x1..x4 are the diagonal of the lower-triangular T; the off-diagonals are
/// (x5 + i x6) at (1,0), (x7 + i x8) at (2,1), (x9 + i x10) at (3,2),
/// (x11 + i x12) at (2,0), (x13 + i x14) at (3,1), (x15 + i x16) at (3,0).
using TParams = std::array<double, kNumCounts>;

Matrix4c t_matrix(const TParams &x);

/// T^dagger T / Tr(T^dagger T); PSD with unit trace for every x. The all-zero
/// vector maps to I/4.
ChiMatrix chi_from_t(const TParams &x);

/// Inverse of chi_from_t up to normalization. Negative eigenvalues are
/// clipped to zero and the trace renormalized before factoring.
TParams t_from_chi(const ChiMatrix &chi);

struct LikelihoodOptions {
    // Expected counts below this are replaced by it in the denominator; a
    // value <= 0 disables the floor and makes n_bar <= 0 an error.
    double eps_den = 0.5;
};

/// sum_nu (n_bar_nu - n_nu)^2 / (2 n_bar_nu).
double likelihood(const TParams &x, const CountsVector &counts, const LikelihoodOptions &options = {});

struct MleOptions {
    double tol = 1e-8;
    int max_iters = 20000;
    double initial_step = 0.05;
    LikelihoodOptions likelihood;
    bool record_history = false;
};

struct MleResult {
    ChiMatrix chi;
    TParams x{};
    double objective = 0.0;
    double initial_objective = 0.0;
    int iterations = 0;
    bool converged = false;
    bool restarted = false;  // a perturbed restart was needed
    std::vector<double> history;
};

/// chi_c: minimizes the likelihood starting from t_from_chi(chi_p).
MleResult mle_chi(const CountsVector &counts, const MleOptions &options = {});

}  // namespace chmix

#endif
