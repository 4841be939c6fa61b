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


// Batch kernels behind the experiment pipeline. Every kernel exists twice:
// `serial` is the reference, `omp` distributes the same work with OpenMP.
// Both write results by index and reduce in index order, so their outputs
// are bitwise identical for any thread count.

#ifndef CHMIX_KERNELS_H
#define CHMIX_KERNELS_H

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chmix/channels.h"
#include "chmix/divisibility.h"
#include "chmix/reconstruction.h"

namespace chmix::kernels {

struct FitOutcome {
    ChiMatrix chi;
    double objective = 0.0;
    bool converged = false;
    bool failed = false;  // mle_chi threw; chi is left as I/4
};

struct PairStats {
    std::size_t pairs = 0;
    double mean_min_eig = 0.0;
    std::optional<double> std_min_eig;  // needs at least two pairs
    double mean_trace_norm = 0.0;
    bool any_singular = false;
};

struct SampleStats {
    double mean = 0.0;
    std::optional<double> std;  // sample (n - 1) standard deviation
};

/// Mean and sample std, accumulated in index order.
SampleStats sample_stats(std::span<const double> values);

/// Ordered (t, s) index pairs: row-major over chi_t x chi_s, first `max_pairs`.
std::size_t pair_count(std::size_t n_t, std::size_t n_s, std::size_t max_pairs);

namespace serial {

std::vector<FitOutcome> fit_batch(std::span<const CountsVector> counts, const MleOptions &options);

PairStats intermediate_pair_stats(std::span<const ChiMatrix> chi_t, std::span<const ChiMatrix> chi_s,
                                  const Tolerances &tol, std::size_t max_pairs);

std::vector<DivisibilityReport> analytic_scan(const ChannelFamily &family, double s, std::span<const double> t_grid,
                                              const Tolerances &tol);

}  // namespace serial

namespace omp {

std::vector<FitOutcome> fit_batch(std::span<const CountsVector> counts, const MleOptions &options);

PairStats intermediate_pair_stats(std::span<const ChiMatrix> chi_t, std::span<const ChiMatrix> chi_s,
                                  const Tolerances &tol, std::size_t max_pairs);

std::vector<DivisibilityReport> analytic_scan(const ChannelFamily &family, double s, std::span<const double> t_grid,
                                              const Tolerances &tol);

/// 0 means the OpenMP default.
void set_max_threads(int threads);
int max_threads();

}  // namespace omp

}  // namespace chmix::kernels

#endif
