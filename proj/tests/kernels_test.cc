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

#include <cmath>

#include "chmix/experiment.h"
#include "chmix/kernels.h"

namespace chmix {
namespace {

std::vector<CountsVector> sample_batch(int n) {
    std::vector<CountsVector> batch;
    for (int k = 0; k < n; ++k) {
        double t = 0.3 * k;
        batch.push_back(run_tomography(build_total_mm_circuit(prob_mm(t)), 2048, derive_seed(3, 0, k, 0, 0), false));
    }
    return batch;
}

std::vector<ChiMatrix> chis_at(double t, int n, std::uint64_t seed) {
    std::vector<ChiMatrix> out;
    CountsVector base = run_tomography(build_total_mm_circuit(prob_mm(t)), 4096, seed, false);
    for (int r = 0; r < n; ++r) {
        CountsVector c = resample_counts(base, derive_seed(seed, 0, 0, r, 1));
        out.push_back(chi_linear_inversion(states_from_counts(c)));
        // Keep inputs PSD so the pair statistics mirror the pipeline.
        out.back() = chi_from_t(t_from_chi(out.back()));
    }
    return out;
}

TEST(SampleStats, MeanAndSampleStd) {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    auto s = kernels::sample_stats(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    ASSERT_TRUE(s.std.has_value());
    EXPECT_NEAR(*s.std, std::sqrt(5.0 / 3.0), 1e-15);
    std::vector<double> one{7.0};
    EXPECT_FALSE(kernels::sample_stats(one).std.has_value());
}

TEST(PairCount, Capped) {
    EXPECT_EQ(kernels::pair_count(20, 20, 10000), 400u);
    EXPECT_EQ(kernels::pair_count(100, 100, 10000), 10000u);
    EXPECT_EQ(kernels::pair_count(200, 100, 10000), 10000u);
    EXPECT_EQ(kernels::pair_count(0, 5, 10), 0u);
}

TEST(Kernels, FitBatchSerialAndOmpAgreeBitwise) {
    auto batch = sample_batch(6);
    MleOptions opts;
    auto a = kernels::serial::fit_batch(batch, opts);
    auto b = kernels::omp::fit_batch(batch, opts);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].chi.mat, b[k].chi.mat);
        EXPECT_EQ(a[k].objective, b[k].objective);
        EXPECT_EQ(a[k].converged, b[k].converged);
        EXPECT_FALSE(a[k].failed);
    }
}

TEST(Kernels, FitBatchReportsFailures) {
    std::vector<CountsVector> batch(2);
    batch[1] = sample_batch(1)[0];
    auto out = kernels::omp::fit_batch(batch, {});
    EXPECT_TRUE(out[0].failed);
    EXPECT_LT((out[0].chi.mat - Matrix4c::Identity() / 4.0).norm(), 1e-15);
    EXPECT_FALSE(out[1].failed);
}

TEST(Kernels, PairStatsSerialAndOmpAgreeBitwise) {
    auto chi_t = chis_at(2.0, 12, 21);
    auto chi_s = chis_at(0.5, 12, 22);
    Tolerances tol;
    for (std::size_t cap : {std::size_t{10000}, std::size_t{50}}) {
        auto a = kernels::serial::intermediate_pair_stats(chi_t, chi_s, tol, cap);
        auto b = kernels::omp::intermediate_pair_stats(chi_t, chi_s, tol, cap);
        EXPECT_EQ(a.pairs, std::min<std::size_t>(cap, 144));
        EXPECT_EQ(a.pairs, b.pairs);
        EXPECT_EQ(a.mean_min_eig, b.mean_min_eig);
        EXPECT_EQ(a.std_min_eig, b.std_min_eig);
        EXPECT_EQ(a.mean_trace_norm, b.mean_trace_norm);
        EXPECT_EQ(a.any_singular, b.any_singular);
    }
}

TEST(Kernels, PairStatsMatchDirectReports) {
    auto chi_t = chis_at(1.5, 3, 31);
    auto chi_s = chis_at(0.5, 2, 32);
    Tolerances tol;
    auto stats = kernels::serial::intermediate_pair_stats(chi_t, chi_s, tol, 10000);
    double sum = 0.0;
    for (const auto &t : chi_t)
        for (const auto &s : chi_s) sum += intermediate_report(t, s, 1.5, 0.5, tol).min_eig;
    EXPECT_NEAR(stats.mean_min_eig, sum / 6.0, 1e-12);
}

TEST(Kernels, AnalyticScanMatchesMarkovianityScan) {
    auto family = ChannelFamily::make(FamilyKind::DepolMixed);
    std::vector<double> ts;
    for (double t : time_grid(8.8, 0.1))
        if (t >= 3.0) ts.push_back(t);
    Tolerances tol;
    auto ref = markovianity_scan(family, 3.0, ts, tol);
    auto a = kernels::serial::analytic_scan(family, 3.0, ts, tol);
    auto b = kernels::omp::analytic_scan(family, 3.0, ts, tol);
    ASSERT_EQ(ref.size(), a.size());
    ASSERT_EQ(ref.size(), b.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
        EXPECT_EQ(a[k].min_eig, ref[k].min_eig);
        EXPECT_EQ(b[k].min_eig, ref[k].min_eig);
        EXPECT_EQ(b[k].verdict, ref[k].verdict);
    }
}

TEST(Kernels, ThreadCap) {
    int before = kernels::omp::max_threads();
    kernels::omp::set_max_threads(1);
    EXPECT_EQ(kernels::omp::max_threads(), 1);
    kernels::omp::set_max_threads(0);
    EXPECT_GE(kernels::omp::max_threads(), 1);
    (void)before;
}

}  // namespace
}  // namespace chmix
