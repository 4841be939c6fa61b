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


// Derivative-free simplex minimizer with dimension-adaptive coefficients.

#ifndef CHMIX_NELDER_MEAD_H
#define CHMIX_NELDER_MEAD_H

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace chmix {

struct NelderMeadOptions {
    double tol = 1e-8;          // stop when f_worst - f_best <= tol * max(|f_best|, 1)
    int max_iters = 20000;      // shared by the initial run and the polishing restart
    double initial_step = 0.05; // simplex edge along each coordinate
    bool record_history = false;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    long evaluations = 0;
    bool converged = false;
    // Best objective after each iteration; non-increasing.
    std::vector<double> history;
};

using Objective = std::function<double(const Eigen::VectorXd &)>;

/// Minimizes `f` from `x0`. On convergence the simplex is rebuilt around the
/// best point once and the search continues, which guards against collapsed
/// simplices in higher dimensions.
NelderMeadResult nelder_mead(const Objective &f, const Eigen::VectorXd &x0, const NelderMeadOptions &options = {});

}  // namespace chmix

#endif
