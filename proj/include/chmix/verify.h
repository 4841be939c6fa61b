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


// Cross-module invariant checks, shared by the `verify` subcommand and the
// acceptance suite.

#ifndef CHMIX_VERIFY_H
#define CHMIX_VERIFY_H

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chmix/channels.h"
#include "chmix/circuits.h"

namespace chmix {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      // largest observed deviation (or mismatch count)
    double tolerance = 0.0;
    std::string detail;
};

struct BuilderCase {
    std::string name;
    std::function<Circuit(double p)> build;
    std::function<PauliProbs(double p)> probs;
};

/// The four circuit builders with the Pauli channel each must realize.
const std::vector<BuilderCase> &circuit_builders();

/// Max abs entry deviation between circuit outputs and the analytic channel
/// over the four tomography inputs.
double circuit_channel_deviation(const BuilderCase &builder, double p);

struct RateAgreement {
    std::size_t points = 0;
    std::size_t skipped = 0;  // singular rates or intermediate maps
    std::vector<double> mismatch_times;
    bool rates_markovian = true;  // no gamma_k < -eps_rate on the grid
    bool steps_markovian = true;  // every consecutive-step map is CP
};

/// Compares the sign of the decay rates with the CP verdict of the local
/// intermediate map V(t + h, t), whose Choi spectrum is h * gamma_k(t) + O(h^2)
/// on the off-identity components. Also scans consecutive grid steps.
RateAgreement rate_divisibility_agreement(const ChannelFamily &family, std::span<const double> grid,
                                          double h = 1e-4, double eps_rate = 1e-6);

/// Runs every invariant with the given seed for the random samples.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed);

}  // namespace chmix

#endif
