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


#include "chmix/reconstruction.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "chmix/divisibility.h"
#include "chmix/error.h"
#include "chmix/nelder_mead.h"

namespace chmix {

namespace {

using Matrix16c = Eigen::Matrix<cplx, 16, 16>;
using Vector16c = Eigen::Matrix<cplx, 16, 1>;

// (row, col) of the complex off-diagonal entries of T, in parameter order.
constexpr std::array<std::pair<int, int>, 6> kOffDiagonal = {{{1, 0}, {2, 1}, {3, 2}, {2, 0}, {3, 1}, {3, 0}}};

// C(nu, 4m + n) = Tr[P_out s_m P_in s_n].
const Matrix16c &count_coefficients() {
    static const Matrix16c kCoeffs = [] {
        Matrix16c c;
        const auto &proj = projector_array();
        for (int nu = 0; nu < kNumCounts; ++nu) {
            for (int m = 0; m < 4; ++m) {
                for (int n = 0; n < 4; ++n) {
                    c(nu, 4 * m + n) = (proj[nu].output * pauli(m) * proj[nu].input * pauli(n)).trace();
                }
            }
        }
        return c;
    }();
    return kCoeffs;
}

std::uint64_t stream_seed(std::uint64_t seed, int input, int basis) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(input), static_cast<std::uint32_t>(basis)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double born(const Matrix2c &projector, const Matrix2c &rho) {
    return std::clamp((projector * rho).trace().real(), 0.0, 1.0);
}

// Cholesky of a PSD matrix that tolerates zero pivots: a pivot at or below
// `floor` zeroes its column instead of dividing by it.
Matrix4c semidefinite_cholesky(const Matrix4c &a, double floor) {
    Matrix4c l = Matrix4c::Zero();
    for (int j = 0; j < 4; ++j) {
        double d = a(j, j).real();
        for (int k = 0; k < j; ++k) {
            d -= std::norm(l(j, k));
        }
        if (d <= floor) {
            continue;
        }
        double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < 4; ++i) {
            cplx v = a(i, j);
            for (int k = 0; k < j; ++k) {
                v -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = v / ljj;
        }
    }
    return l;
}

double likelihood_of_chi(const Matrix4c &chi, const CountsVector &counts, const LikelihoodOptions &options) {
    Vector16c v;
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            v(4 * m + n) = chi(m, n);
        }
    }
    Vector16c nbar = count_coefficients() * v;
    const double shots = static_cast<double>(counts.shots);
    double total = 0.0;
    for (int nu = 0; nu < kNumCounts; ++nu) {
        double expected = shots * nbar(nu).real();
        double denom = expected;
        if (options.eps_den > 0.0) {
            denom = std::max(expected, options.eps_den);
        } else if (!(expected > 0.0)) {
            throw Error(ErrorKind::DegenerateDenominator, "expected count " + std::to_string(expected) +
                                                              " at index " + std::to_string(nu));
        }
        double diff = expected - counts.n[nu];
        total += diff * diff / (2.0 * denom);
    }
    return total;
}

TParams to_params(const Eigen::VectorXd &v) {
    TParams x{};
    std::copy(v.data(), v.data() + kNumCounts, x.begin());
    return x;
}

}  // namespace

const std::array<ProjectorPair, kNumCounts> &projector_array() {
    static const std::array<ProjectorPair, kNumCounts> kArray = [] {
        const auto &basis = tomography_inputs();
        std::array<ProjectorPair, kNumCounts> a;
        for (int in = 0; in < 4; ++in) {
            for (int out = 0; out < 4; ++out) {
                a[4 * in + out] = {basis[in], basis[out]};
            }
        }
        return a;
    }();
    return kArray;
}

CountsVector counts_from_outputs(const std::array<Matrix2c, 4> &outputs, std::int64_t shots, std::uint64_t seed,
                                 bool exact) {
    if (shots < 1) {
        throw Error(ErrorKind::InvalidState, "shots must be positive");
    }
    CountsVector c;
    c.shots = shots;
    c.seed = seed;
    const auto &basis = tomography_inputs();
    const double s = static_cast<double>(shots);
    for (int in = 0; in < 4; ++in) {
        const Matrix2c &rho = outputs[in];
        double *row = &c.n[4 * in];
        if (exact) {
            for (int out = 0; out < 4; ++out) {
                row[out] = s * born(basis[out], rho);
            }
            continue;
        }
        auto z = sample_counts(rho, MeasBasis::Z, shots, stream_seed(seed, in, 0));
        auto x = sample_counts(rho, MeasBasis::X, shots, stream_seed(seed, in, 1));
        auto y = sample_counts(rho, MeasBasis::Y, shots, stream_seed(seed, in, 2));
        row[0] = static_cast<double>(z.first);
        row[1] = static_cast<double>(z.second);
        row[2] = static_cast<double>(x.first);
        row[3] = static_cast<double>(y.first);
    }
    return c;
}

CountsVector run_tomography(const Circuit &circuit, std::int64_t shots, std::uint64_t seed, bool exact) {
    return counts_from_outputs(channel_from_circuit(circuit), shots, seed, exact);
}

std::array<Matrix2c, 4> states_from_counts(const CountsVector &counts) {
    const double shots = static_cast<double>(counts.shots);
    std::array<Matrix2c, 4> states;
    for (int in = 0; in < 4; ++in) {
        double rz = 2.0 * counts.n[4 * in] / shots - 1.0;
        double rx = 2.0 * counts.n[4 * in + 2] / shots - 1.0;
        double ry = 2.0 * counts.n[4 * in + 3] / shots - 1.0;
        states[in] = 0.5 * (pauli(0) + rx * pauli(1) + ry * pauli(2) + rz * pauli(3));
    }
    return states;
}

ChiMatrix chi_linear_inversion(const std::array<Matrix2c, 4> &states) {
    ChiMatrix chi = chi_from_transfer(transfer_from_outputs(states));
    chi.mat = hermitian_from(chi.mat);
    return chi;
}

std::array<double, kNumCounts> expected_counts(const ChiMatrix &chi, double shots) {
    Vector16c v;
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            v(4 * m + n) = chi.mat(m, n);
        }
    }
    Vector16c nbar = count_coefficients() * v;
    std::array<double, kNumCounts> out{};
    for (int nu = 0; nu < kNumCounts; ++nu) {
        out[nu] = shots * nbar(nu).real();
    }
    return out;
}

Matrix4c t_matrix(const TParams &x) {
    Matrix4c t = Matrix4c::Zero();
    for (int k = 0; k < 4; ++k) {
        t(k, k) = x[k];
    }
    for (std::size_t k = 0; k < kOffDiagonal.size(); ++k) {
        auto [r, c] = kOffDiagonal[k];
        t(r, c) = cplx(x[4 + 2 * k], x[5 + 2 * k]);
    }
    return t;
}

ChiMatrix chi_from_t(const TParams &x) {
    double norm = 0.0;
    for (double v : x) {
        norm += v * v;
    }
    if (norm == 0.0) {
        return {Matrix4c::Identity() / 4.0};
    }
    Matrix4c t = t_matrix(x);
    ChiMatrix chi{t.adjoint() * t / norm};
    chi.mat = hermitian_from(chi.mat);
    return chi;
}

TParams t_from_chi(const ChiMatrix &chi) {
    Matrix4c h = hermitian_from(chi.mat);
    EigenResult eig = hermitian_eigen(h, true);
    if (eig.eigenvalues.minCoeff() < 0.0) {
        Eigen::VectorXd clipped = eig.eigenvalues.cwiseMax(0.0);
        h = *eig.eigenvectors * clipped.asDiagonal() * eig.eigenvectors->adjoint();
    }
    double tr = h.trace().real();
    if (!(tr > 0.0)) {
        TParams x{};
        x.fill(0.0);
        return x;
    }
    h /= tr;

    // T^dagger T = chi with T lower triangular is a Cholesky factorization of
    // J chi J (J the exchange matrix): J chi J = L L^dagger gives T = J L^dagger J.
    Matrix4c flipped = h.colwise().reverse().rowwise().reverse();
    Matrix4c l = semidefinite_cholesky(flipped, 1e-14);
    Matrix4c t = l.adjoint().colwise().reverse().rowwise().reverse();

    TParams x{};
    for (int k = 0; k < 4; ++k) {
        x[k] = t(k, k).real();
    }
    for (std::size_t k = 0; k < kOffDiagonal.size(); ++k) {
        auto [r, c] = kOffDiagonal[k];
        x[4 + 2 * k] = t(r, c).real();
        x[5 + 2 * k] = t(r, c).imag();
    }
    return x;
}

double likelihood(const TParams &x, const CountsVector &counts, const LikelihoodOptions &options) {
    return likelihood_of_chi(chi_from_t(x).mat, counts, options);
}

MleResult mle_chi(const CountsVector &counts, const MleOptions &options) {
    if (counts.shots < 1) {
        throw Error(ErrorKind::InvalidState, "shots must be positive");
    }
    ChiMatrix chi_p = chi_linear_inversion(states_from_counts(counts));
    TParams x0 = t_from_chi(chi_p);

    Objective objective = [&counts, &options](const Eigen::VectorXd &v) {
        return likelihood(to_params(v), counts, options.likelihood);
    };
    NelderMeadOptions nm;
    nm.tol = options.tol;
    nm.max_iters = options.max_iters;
    nm.initial_step = options.initial_step;
    nm.record_history = options.record_history;

    Eigen::Map<const Eigen::VectorXd> start(x0.data(), kNumCounts);
    NelderMeadResult best = nelder_mead(objective, start, nm);
    const double f0 = objective(start);

    MleResult result;
    if (!best.converged) {
        // Perturbed restart; the draw depends only on the counts' seed.
        std::mt19937_64 rng(counts.seed ^ 0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> jitter(0.0, options.initial_step);
        Eigen::VectorXd perturbed = start;
        for (Eigen::Index i = 0; i < perturbed.size(); ++i) {
            perturbed(i) += jitter(rng);
        }
        NelderMeadResult retry = nelder_mead(objective, perturbed, nm);
        result.restarted = true;
        if (retry.f < best.f) {
            retry.iterations += best.iterations;
            best = std::move(retry);
        } else {
            best.iterations += retry.iterations;
        }
    }

    result.x = to_params(best.x);
    result.chi = chi_from_t(result.x);
    result.objective = best.f;
    result.initial_objective = f0;
    result.iterations = best.iterations;
    result.converged = best.converged;
    result.history = std::move(best.history);
    return result;
}

}  // namespace chmix
