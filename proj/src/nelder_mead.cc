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


#include "chmix/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chmix {

namespace {

struct Simplex {
    std::vector<Eigen::VectorXd> x;
    std::vector<double> f;
    std::vector<int> order;  // order[0] best, order.back() worst

    void sort() {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [this](int a, int b) { return f[a] < f[b]; });
    }
};

struct RunState {
    const Objective &objective;
    const NelderMeadOptions &options;
    NelderMeadResult &result;

    double eval(const Eigen::VectorXd &x) {
        ++result.evaluations;
        double v = objective(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    }
};

Simplex make_simplex(RunState &state, const Eigen::VectorXd &x0, double fx0) {
    const Eigen::Index n = x0.size();
    Simplex s;
    s.x.reserve(n + 1);
    s.x.push_back(x0);
    s.f.push_back(fx0);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd v = x0;
        v(i) += state.options.initial_step;
        s.f.push_back(state.eval(v));
        s.x.push_back(std::move(v));
    }
    s.order.resize(n + 1);
    s.sort();
    return s;
}

// Returns true on convergence, false when the iteration budget runs out.
bool run_simplex(RunState &state, Simplex &s, int &iters_left) {
    const auto n = static_cast<double>(s.x.front().size());
    // Gao-Han adaptive coefficients; they reduce to the classic ones for n = 2.
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / n;
    const double gamma = 0.75 - 0.5 / n;
    const double delta = 1.0 - 1.0 / n;
    const std::size_t m = s.x.size();

    while (true) {
        double f_best = s.f[s.order.front()];
        double f_worst = s.f[s.order.back()];
        if (f_worst - f_best <= state.options.tol * std::max(std::abs(f_best), 1.0)) {
            return true;
        }
        if (iters_left <= 0) {
            return false;
        }
        --iters_left;
        ++state.result.iterations;

        const int worst = s.order.back();
        const int second = s.order[m - 2];
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(s.x.front().size());
        for (std::size_t k = 0; k + 1 < m; ++k) {
            centroid += s.x[s.order[k]];
        }
        centroid /= static_cast<double>(m - 1);

        Eigen::VectorXd xr = centroid + alpha * (centroid - s.x[worst]);
        double fr = state.eval(xr);
        if (fr < f_best) {
            Eigen::VectorXd xe = centroid + beta * (xr - centroid);
            double fe = state.eval(xe);
            if (fe < fr) {
                s.x[worst] = std::move(xe);
                s.f[worst] = fe;
            } else {
                s.x[worst] = std::move(xr);
                s.f[worst] = fr;
            }
        } else if (fr < s.f[second]) {
            s.x[worst] = std::move(xr);
            s.f[worst] = fr;
        } else {
            bool outside = fr < f_worst;
            Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid))
                                         : Eigen::VectorXd(centroid - gamma * (centroid - s.x[worst]));
            double fc = state.eval(xc);
            if (fc < (outside ? fr : f_worst)) {
                s.x[worst] = std::move(xc);
                s.f[worst] = fc;
            } else {
                const Eigen::VectorXd best = s.x[s.order.front()];
                for (std::size_t k = 1; k < m; ++k) {
                    int idx = s.order[k];
                    s.x[idx] = best + delta * (s.x[idx] - best);
                    s.f[idx] = state.eval(s.x[idx]);
                }
            }
        }
        s.sort();
        if (state.options.record_history) {
            state.result.history.push_back(s.f[s.order.front()]);
        }
    }
}

}  // namespace

NelderMeadResult nelder_mead(const Objective &f, const Eigen::VectorXd &x0, const NelderMeadOptions &options) {
    NelderMeadResult result;
    RunState state{f, options, result};
    int iters_left = options.max_iters;

    Simplex s = make_simplex(state, x0, state.eval(x0));
    bool converged = run_simplex(state, s, iters_left);
    if (converged) {
        // One polishing pass from a fresh simplex around the best vertex.
        const Eigen::VectorXd best = s.x[s.order.front()];
        const double f_best = s.f[s.order.front()];
        Simplex polished = make_simplex(state, best, f_best);
        converged = run_simplex(state, polished, iters_left);
        if (polished.f[polished.order.front()] <= f_best) {
            s = std::move(polished);
        }
    }
    result.x = s.x[s.order.front()];
    result.f = s.f[s.order.front()];
    result.converged = converged;
    return result;
}

}  // namespace chmix
