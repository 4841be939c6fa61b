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

#include "chmix/channels.h"

#include <cmath>
#include <string>

#include "chmix/error.h"

namespace chmix {

namespace {

using Vec4 = std::array<double, 4>;

constexpr int kHadamard[4][4] = {
    {1, 1, 1, 1},
    {1, 1, -1, -1},
    {1, -1, 1, -1},
    {1, -1, -1, 1},
};

Vec4 hadamard(const Vec4 &v) {
    Vec4 out{};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            out[a] += kHadamard[a][b] * v[b];
        }
    }
    return out;
}

void require_non_negative(double t) {
    if (!(t >= 0.0)) {
        throw Error(ErrorKind::NegativeTime, "t = " + std::to_string(t));
    }
}

double logistic(double k, double center, double t) { return 1.0 / (1.0 + std::exp(-k * (t - center))); }

// d/dt of the designed functions.
struct DesignRates {
    double a_dot;
    double b_dot;
};

DesignRates design_rates(double t) {
    double s1 = logistic(4.0, 2.0, t);
    double s2 = logistic(4.5, 6.0, t);
    double a_dot = 0.5 * 4.0 * s1 * (1.0 - s1) + 0.48 * 4.5 * s2 * (1.0 - s2);
    double u = t - 4.0;
    double b = 0.49 * std::exp(-std::pow(u, 6));
    double b_dot = -6.0 * std::pow(u, 5) * b;
    return {a_dot, b_dot};
}

Vec4 flip_probs(double p, int axis) {
    Vec4 out{p, 0.0, 0.0, 0.0};
    out[static_cast<std::size_t>(axis)] = 1.0 - p;
    return out;
}

Vec4 flip_rate(double p_dot, int axis) {
    Vec4 out{p_dot, 0.0, 0.0, 0.0};
    out[static_cast<std::size_t>(axis)] = -p_dot;
    return out;
}

Vec4 depol_rate(double p_dot) { return {-0.75 * p_dot, 0.25 * p_dot, 0.25 * p_dot, 0.25 * p_dot}; }

double prob_mm_dot(double t) { return -0.5 * std::exp(-t); }

}  // namespace

bool PauliProbs::is_valid(double tol) const {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= -tol && v <= 1.0 + tol)) {
            return false;
        }
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::MarkovBitFlip: return "MarkovBitFlip";
        case FamilyKind::MarkovYFlip: return "MarkovYFlip";
        case FamilyKind::MixedMM: return "MixedMM";
        case FamilyKind::NmX1: return "NmX1";
        case FamilyKind::NmX2: return "NmX2";
        case FamilyKind::MixedNMreplica: return "MixedNMreplica";
        case FamilyKind::DepolQ: return "DepolQ";
        case FamilyKind::DepolR: return "DepolR";
        case FamilyKind::DepolMixed: return "DepolMixed";
        case FamilyKind::Mixture: return "Mixture";
    }
    return "Unknown";
}

double prob_mm(double t) {
    require_non_negative(t);
    return 0.5 * (1.0 + std::exp(-t));
}

std::pair<double, double> probs_nm_replica(double t) {
    require_non_negative(t);
    double c = std::cos(t);
    double p2 = c * c;
    double p1 = 1.5 * (0.5 * (1.0 + std::exp(-t)) - p2 / 3.0);
    if (!(p1 >= -1e-9 && p1 <= 1.0 + 1e-9)) {
        throw Error(ErrorKind::DomainViolation, "p1(" + std::to_string(t) + ") = " + std::to_string(p1));
    }
    return {p1, p2};
}

DesignFunctions design_functions(double t) {
    require_non_negative(t);
    DesignFunctions f;
    f.a = 0.5 * logistic(4.0, 2.0, t) + 0.48 * logistic(4.5, 6.0, t);
    f.b = 0.49 * std::exp(-std::pow(t - 4.0, 6));
    f.q = f.a + f.b;
    f.r = f.a - f.b;
    // With equal weights the mixture collapses onto a(t) exactly.
    f.w = f.a;
    return f;
}

PauliProbs depolarizing_probs(double p) { return {{1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p}}; }

ChannelFamily::ChannelFamily(FamilyKind kind, Evaluator probs, Evaluator derivative)
    : kind_(kind), probs_(std::move(probs)), derivative_(std::move(derivative)) {}

ChannelFamily ChannelFamily::make(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::MarkovBitFlip:
            return {kind, [](double t) { return flip_probs(prob_mm(t), 1); },
                    [](double t) { return flip_rate(prob_mm_dot(t), 1); }};
        case FamilyKind::MarkovYFlip:
            return {kind, [](double t) { return flip_probs(prob_mm(t), 2); },
                    [](double t) { return flip_rate(prob_mm_dot(t), 2); }};
        case FamilyKind::MixedMM:
            return {kind,
                    [](double t) {
                        double p = prob_mm(t);
                        double e = std::exp(-t);
                        return Vec4{p, 0.25 * (1.0 - e), 0.25 * (1.0 - e), 0.0};
                    },
                    [](double t) {
                        double e = std::exp(-t);
                        return Vec4{-0.5 * e, 0.25 * e, 0.25 * e, 0.0};
                    }};
        case FamilyKind::NmX1:
            return {kind, [](double t) { return flip_probs(probs_nm_replica(t).first, 1); },
                    [](double t) { return flip_rate(-0.75 * std::exp(-t) + 0.5 * std::sin(2.0 * t), 1); }};
        case FamilyKind::NmX2:
            return {kind, [](double t) { return flip_probs(probs_nm_replica(t).second, 1); },
                    [](double t) { return flip_rate(-std::sin(2.0 * t), 1); }};
        case FamilyKind::MixedNMreplica:
            return {kind, [](double t) { return flip_probs(prob_mm(t), 1); },
                    [](double t) { return flip_rate(prob_mm_dot(t), 1); }};
        case FamilyKind::DepolQ:
            return {kind, [](double t) { return depolarizing_probs(design_functions(t).q).p; },
                    [](double t) {
                        auto d = design_rates(t);
                        return depol_rate(d.a_dot + d.b_dot);
                    }};
        case FamilyKind::DepolR:
            return {kind, [](double t) { return depolarizing_probs(design_functions(t).r).p; },
                    [](double t) {
                        auto d = design_rates(t);
                        return depol_rate(d.a_dot - d.b_dot);
                    }};
        case FamilyKind::DepolMixed:
            return {kind, [](double t) { return depolarizing_probs(design_functions(t).w).p; },
                    [](double t) { return depol_rate(design_rates(t).a_dot); }};
        case FamilyKind::Mixture:
            break;
    }
    throw Error(ErrorKind::ConfigError, "no canonical definition for family " + std::string(to_string(kind)));
}

PauliProbs ChannelFamily::probs(double t) const {
    require_non_negative(t);
    return {probs_(t)};
}

std::optional<Vec4> ChannelFamily::derivative(double t) const {
    if (!derivative_) {
        return std::nullopt;
    }
    require_non_negative(t);
    return derivative_(t);
}

ChannelFamily ChannelFamily::without_derivative() const { return {kind_, probs_, nullptr}; }

std::optional<DecayRates> ChannelFamily::closed_form_rates(double t) const {
    require_non_negative(t);
    auto depol = [](double p, double p_dot) {
        double g = p_dot / (4.0 * (1.0 - p));
        return DecayRates{g, g, g};
    };
    switch (kind_) {
        case FamilyKind::MarkovBitFlip:
        case FamilyKind::MixedNMreplica:
            return DecayRates{0.5, 0.0, 0.0};
        case FamilyKind::MarkovYFlip:
            return DecayRates{0.0, 0.5, 0.0};
        case FamilyKind::MixedMM:
            return DecayRates{0.25, 0.25, -std::tanh(0.5 * t) / 4.0};
        case FamilyKind::NmX1: {
            double et = std::exp(t);
            double g = (8.0 * et * std::sin(t) * std::cos(t) - 6.0) / (4.0 * (et * std::cos(2.0 * t) - 3.0));
            return DecayRates{g, 0.0, 0.0};
        }
        case FamilyKind::NmX2:
            return DecayRates{std::tan(2.0 * t), 0.0, 0.0};
        case FamilyKind::DepolQ: {
            auto f = design_functions(t);
            auto d = design_rates(t);
            return depol(f.q, d.a_dot + d.b_dot);
        }
        case FamilyKind::DepolR: {
            auto f = design_functions(t);
            auto d = design_rates(t);
            return depol(f.r, d.a_dot - d.b_dot);
        }
        case FamilyKind::DepolMixed:
            return depol(design_functions(t).w, design_rates(t).a_dot);
        case FamilyKind::Mixture:
            return std::nullopt;
    }
    return std::nullopt;
}

Matrix2c apply_pauli_linear(const PauliProbs &probs, const Matrix2c &op) {
    Matrix2c out = Matrix2c::Zero();
    for (int a = 0; a < 4; ++a) {
        out += probs[static_cast<std::size_t>(a)] * (pauli(a) * op * pauli(a));
    }
    return out;
}

bool is_density_matrix(const Matrix2c &rho, double tol) {
    if (hermitian_deviation(rho) > tol) {
        return false;
    }
    if (std::abs(rho.trace() - 1.0) > tol) {
        return false;
    }
    return hermitian_eigen(rho, false).eigenvalues(0) >= -tol;
}

Matrix2c apply_pauli(const PauliProbs &probs, const Matrix2c &rho) {
    if (!probs.is_valid()) {
        throw Error(ErrorKind::InvalidState, "Pauli probabilities are not a distribution");
    }
    if (!is_density_matrix(rho)) {
        throw Error(ErrorKind::InvalidState, "input is not a density matrix");
    }
    return apply_pauli_linear(probs, rho);
}

std::array<double, 4> pauli_eigenvalues(const PauliProbs &probs) { return hadamard(probs.p); }

PauliProbs probs_from_eigenvalues(const std::array<double, 4> &lambda) {
    Vec4 p = hadamard(lambda);
    for (double &v : p) {
        v *= 0.25;
    }
    return {p};
}

DecayRates decay_rates(const ChannelFamily &family, double t, double dt) {
    require_non_negative(t);
    Vec4 p = family.probs(t).p;
    Vec4 p_dot{};
    if (auto d = family.derivative(t)) {
        p_dot = *d;
    } else {
        if (!(dt > 0.0)) {
            throw Error(ErrorKind::ConfigError, "finite-difference step must be positive");
        }
        if (t >= dt) {
            Vec4 hi = family.probs(t + dt).p;
            Vec4 lo = family.probs(t - dt).p;
            for (int i = 0; i < 4; ++i) {
                p_dot[i] = (hi[i] - lo[i]) / (2.0 * dt);
            }
        } else {
            // one-sided second-order stencil near t = 0
            Vec4 p1 = family.probs(t + dt).p;
            Vec4 p2 = family.probs(t + 2.0 * dt).p;
            for (int i = 0; i < 4; ++i) {
                p_dot[i] = (-3.0 * p[i] + 4.0 * p1[i] - p2[i]) / (2.0 * dt);
            }
        }
    }
    Vec4 lambda = hadamard(p);
    Vec4 lambda_dot = hadamard(p_dot);
    Vec4 mu{};
    for (int b = 0; b < 4; ++b) {
        if (std::abs(lambda[b]) < kSingularEigenvalueTol) {
            throw Error(ErrorKind::SingularEigenvalue,
                        "lambda_" + std::to_string(b) + "(" + std::to_string(t) + ") vanishes");
        }
        mu[b] = lambda_dot[b] / lambda[b];
    }
    Vec4 gamma = hadamard(mu);
    return {gamma[1] / 4.0, gamma[2] / 4.0, gamma[3] / 4.0};
}

ChannelFamily mix(double eta, const ChannelFamily &f1, const ChannelFamily &f2) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::EtaOutOfRange, "eta = " + std::to_string(eta));
    }
    auto combine = [eta](const Vec4 &a, const Vec4 &b) {
        Vec4 out{};
        for (int i = 0; i < 4; ++i) {
            out[i] = eta * a[i] + (1.0 - eta) * b[i];
        }
        return out;
    };
    ChannelFamily::Evaluator probs = [combine, p1 = f1.probs_, p2 = f2.probs_](double t) {
        return combine(p1(t), p2(t));
    };
    ChannelFamily::Evaluator derivative;
    if (f1.derivative_ && f2.derivative_) {
        derivative = [combine, d1 = f1.derivative_, d2 = f2.derivative_](double t) {
            return combine(d1(t), d2(t));
        };
    }
    return {FamilyKind::Mixture, std::move(probs), std::move(derivative)};
}

ChiMatrix chi_from_probs(const PauliProbs &probs) {
    ChiMatrix chi;
    for (int a = 0; a < 4; ++a) {
        chi.mat(a, a) = probs[static_cast<std::size_t>(a)];
    }
    return chi;
}

ChiMatrix chi_ideal(const ChannelFamily &family, double t) { return chi_from_probs(family.probs(t)); }

}  // namespace chmix
