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


// Per-item work shared by the serial and OpenMP kernels.

#ifndef CHMIX_SRC_KERNELS_COMMON_H
#define CHMIX_SRC_KERNELS_COMMON_H

#include <cmath>
#include <cstddef>
#include <vector>

#include "chmix/error.h"
#include "chmix/kernels.h"

namespace chmix::kernels::detail {

inline FitOutcome fit_one(const CountsVector &counts, const MleOptions &options) {
    FitOutcome out;
    try {
        MleResult r = mle_chi(counts, options);
        out.chi = r.chi;
        out.objective = r.objective;
        out.converged = r.converged;
    } catch (const Error &) {
        out.chi.mat = Matrix4c::Identity() / 4.0;
        out.failed = true;
    }
    return out;
}

struct PairValue {
    double min_eig = 0.0;
    double trace_norm = 0.0;
};

// Transfer matrices of the t-side and pseudo-inverses of the s-side,
// computed once per batch.
struct PairInputs {
    std::vector<Matrix4c> f_t;
    std::vector<Matrix4c> f_s_pinv;
    std::vector<bool> s_singular;
};

inline Matrix4c transfer_of(const ChiMatrix &chi) { return transfer_from_chi(chi).mat; }

inline void prepare_s(const ChiMatrix &chi, double cutoff, Matrix4c &pinv, bool &singular) {
    Matrix4c f = transfer_of(chi);
    singular = numerical_rank(f, cutoff) < 4;
    pinv = pseudo_inverse(f, cutoff);
}

inline PairValue pair_value(const Matrix4c &f_t, const Matrix4c &f_s_pinv) {
    TransferMatrix im{f_t * f_s_pinv};
    Matrix4c w = hermitian_from(choi_from_transfer(im).mat);
    Eigen::VectorXd lambda = hermitian_eigen(w, false).eigenvalues;
    PairValue v;
    v.min_eig = lambda(0);
    // W is Hermitian, so its trace norm is the sum of |eigenvalues|.
    v.trace_norm = lambda.cwiseAbs().sum();
    return v;
}

inline PairStats reduce_pairs(const std::vector<PairValue> &values, bool any_singular) {
    PairStats stats;
    stats.pairs = values.size();
    stats.any_singular = any_singular;
    if (values.empty()) {
        return stats;
    }
    std::vector<double> mins(values.size());
    double tn = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        mins[k] = values[k].min_eig;
        tn += values[k].trace_norm;
    }
    SampleStats s = sample_stats(mins);
    stats.mean_min_eig = s.mean;
    stats.std_min_eig = s.std;
    stats.mean_trace_norm = tn / static_cast<double>(values.size());
    return stats;
}

}  // namespace chmix::kernels::detail

#endif
