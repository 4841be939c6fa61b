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


#include <algorithm>
#include <cmath>

#include "chmix/kernels.h"
#include "kernels_common.h"

namespace chmix::kernels {

SampleStats sample_stats(std::span<const double> values) {
    SampleStats s;
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::size_t pair_count(std::size_t n_t, std::size_t n_s, std::size_t max_pairs) {
    return std::min(n_t * n_s, max_pairs);
}

namespace serial {

std::vector<FitOutcome> fit_batch(std::span<const CountsVector> counts, const MleOptions &options) {
    std::vector<FitOutcome> out(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        out[k] = detail::fit_one(counts[k], options);
    }
    return out;
}

PairStats intermediate_pair_stats(std::span<const ChiMatrix> chi_t, std::span<const ChiMatrix> chi_s,
                                  const Tolerances &tol, std::size_t max_pairs) {
    const std::size_t n_pairs = pair_count(chi_t.size(), chi_s.size(), max_pairs);
    std::vector<Matrix4c> f_t(chi_t.size());
    for (std::size_t i = 0; i < chi_t.size(); ++i) {
        f_t[i] = detail::transfer_of(chi_t[i]);
    }
    std::vector<Matrix4c> pinv(chi_s.size());
    std::vector<char> singular(chi_s.size(), 0);
    for (std::size_t j = 0; j < chi_s.size(); ++j) {
        bool sing = false;
        detail::prepare_s(chi_s[j], tol.pinv_cutoff, pinv[j], sing);
        singular[j] = sing;
    }
    std::vector<detail::PairValue> values(n_pairs);
    bool any_singular = false;
    for (std::size_t k = 0; k < n_pairs; ++k) {
        std::size_t i = k / chi_s.size();
        std::size_t j = k % chi_s.size();
        values[k] = detail::pair_value(f_t[i], pinv[j]);
        any_singular = any_singular || singular[j];
    }
    return detail::reduce_pairs(values, any_singular);
}

std::vector<DivisibilityReport> analytic_scan(const ChannelFamily &family, double s, std::span<const double> t_grid,
                                              const Tolerances &tol) {
    return markovianity_scan(family, s, t_grid, tol);
}

}  // namespace serial

}  // namespace chmix::kernels
