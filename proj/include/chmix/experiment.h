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


// End-to-end experiment runner: grid, tomography, resampling, MLE,
// fidelity and intermediate-map statistics, and CSV emission.

#ifndef CHMIX_EXPERIMENT_H
#define CHMIX_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chmix/channels.h"
#include "chmix/circuits.h"
#include "chmix/divisibility.h"
#include "chmix/reconstruction.h"

namespace chmix {

enum class ExperimentKind { MM, NMReplica, NMDepol };
enum class Mode { Analytic, Shots };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(Mode mode);
/// Throws ConfigError on unknown names ("mm", "nm-replica", "nm-depol").
ExperimentKind parse_experiment(std::string_view name);
/// Throws ConfigError on unknown names ("analytic", "shots").
Mode parse_mode(std::string_view name);

inline constexpr double kShotEpsTp = 0.05;
inline constexpr double kShotSigmaFactor = 3.0;

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::MM;
    double t_max = 3.8;
    double t_step = 0.1;
    double s = 0.5;
    std::int64_t shots = 8192;
    int resamples = 20;
    std::uint64_t seed = 7;
    Mode mode = Mode::Shots;
    double eps_class = 1e-6;
    // Unset means 1e-6 in analytic mode and kShotEpsTp in shot mode.
    std::optional<double> eps_tp;
    double pinv_cutoff = 1e-10;
    std::size_t max_pairs = 10000;
    std::filesystem::path output_dir = "results";
    MleOptions mle;

    /// Default grid and s for each experiment.
    static ExperimentConfig defaults(ExperimentKind kind);

    /// Throws ConfigError.
    void validate() const;

    Tolerances tolerances() const;
};

/// {0, dt, ..., n dt} with n = floor(t_max / dt); empty when t_max < dt.
std::vector<double> time_grid(double t_max, double t_step);

struct ChannelSpec {
    std::string label;  // L1, L2, LT
    ChannelFamily family;
    std::function<Circuit(double t)> circuit;
};

std::vector<ChannelSpec> channel_specs(ExperimentKind kind);

/// Schedule-independent seed for one task.
std::uint64_t derive_seed(std::uint64_t master, int channel, int t_index, int resample, int stream);

/// n' = clamp(n + round(g sqrt(n)), 0, shots) per count with g ~ N(0, 1).
CountsVector resample_counts(const CountsVector &counts, std::uint64_t seed);

struct FidelityPoint {
    double t = 0.0;
    double mean = 0.0;
    std::optional<double> std;
};

struct MinEigPoint {
    double t = 0.0;
    double s = 0.0;
    double mean = 0.0;
    std::optional<double> std;
    double theory = 0.0;
    double trace_norm = 1.0;
    Verdict verdict = Verdict::CPdivisibleStep;
    Verdict theory_verdict = Verdict::CPdivisibleStep;
    bool singular = false;
};

struct TheoryPoint {
    double t = 0.0;
    PauliProbs probs;
    std::optional<DecayRates> rates;  // unset where an eigenvalue vanishes
    std::optional<double> min_eig;    // unset for t < s
};

struct CountsPoint {
    double t = 0.0;
    CountsVector counts;
};

struct ChannelResult {
    std::string label;
    FamilyKind family = FamilyKind::Mixture;
    std::vector<FidelityPoint> fidelity;
    std::vector<MinEigPoint> min_eig;
    std::vector<TheoryPoint> theory;
    std::vector<CountsPoint> counts;  // raw tomography counts per grid time (shot mode)
    std::vector<std::string> failures;

    /// Non-Markovian iff some measured step is NotCP.
    bool markovian() const;
    bool theory_markovian() const;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<double> grid;
    std::vector<ChannelResult> channels;

    std::size_t failure_count() const;
};

ExperimentResult run_experiment(const ExperimentConfig &config);

/// Writes fidelity_, mineig_, theory_, counts_ (shot mode) per channel plus
/// reports.csv and manifest.txt. Throws IoError.
void emit_outputs(const ExperimentResult &result, const std::filesystem::path &dir);

}  // namespace chmix

#endif
