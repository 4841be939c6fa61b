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


#include <omp.h>

#include <cstdint>
#include <exception>

#include "chmix/kernels.h"
#include "kernels_common.h"

namespace chmix::kernels::omp {

namespace {

// Rethrows the first exception captured inside a parallel region.
class ExceptionSlot {
   public:
    void capture() {
#pragma omp critical(chmix_exception_slot)
        if (!error_) {
            error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_) {
            std::rethrow_exception(error_);
        }
    }

   private:
    std::exception_ptr error_;
};

}  // namespace

void set_max_threads(int threads) {
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

int max_threads() { return omp_get_max_threads(); }

std::vector<FitOutcome> fit_batch(std::span<const CountsVector> counts, const MleOptions &options) {
    std::vector<FitOutcome> out(counts.size());
    const auto n = static_cast<std::int64_t>(counts.size());
    // Fits vary 10x in cost, so hand them out one at a time.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < n; ++k) {
        out[k] = detail::fit_one(counts[k], options);
    }
    return out;
}

PairStats intermediate_pair_stats(std::span<const ChiMatrix> chi_t, std::span<const ChiMatrix> chi_s,
                                  const Tolerances &tol, std::size_t max_pairs) {
    const std::size_t n_pairs = pair_count(chi_t.size(), chi_s.size(), max_pairs);
    std::vector<Matrix4c> f_t(chi_t.size());
    std::vector<Matrix4c> pinv(chi_s.size());
    std::vector<char> singular(chi_s.size(), 0);
    std::vector<detail::PairValue> values(n_pairs);
    ExceptionSlot slot;
#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(chi_t.size()); ++i) {
            f_t[i] = detail::transfer_of(chi_t[i]);
        }
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(chi_s.size()); ++j) {
            bool sing = false;
            detail::prepare_s(chi_s[j], tol.pinv_cutoff, pinv[j], sing);
            singular[j] = sing;
        }
#pragma omp for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n_pairs); ++k) {
            try {
                values[k] = detail::pair_value(f_t[k / chi_s.size()], pinv[k % chi_s.size()]);
            } catch (...) {
                slot.capture();
            }
        }
    }
    slot.rethrow();
    bool any_singular = false;
    for (std::size_t k = 0; k < n_pairs; ++k) {
        any_singular = any_singular || singular[k % chi_s.size()];
    }
    return detail::reduce_pairs(values, any_singular);
}

std::vector<DivisibilityReport> analytic_scan(const ChannelFamily &family, double s, std::span<const double> t_grid,
                                              const Tolerances &tol) {
    const ChiMatrix chi_s = chi_ideal(family, s);
    std::vector<DivisibilityReport> reports(t_grid.size());
    ExceptionSlot slot;
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(t_grid.size()); ++k) {
        try {
            if (t_grid[k] < s) {
                throw Error(ErrorKind::ConfigError, "scan times must not precede s");
            }
            reports[k] = intermediate_report(chi_ideal(family, t_grid[k]), chi_s, t_grid[k], s, tol);
        } catch (...) {
            slot.capture();
        }
    }
    slot.rethrow();
    return reports;
}

}  // namespace chmix::kernels::omp
