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

// Time-parameterized single-qubit Pauli channels
//
//     rho -> sum_a p_a(t) sigma_a rho sigma_a
//
// and everything derived from their probability vectors: Pauli eigenvalues,
// time-local decay rates, chi matrices. These closed forms are the ground
// truth the circuit simulation and tomography are checked against.

#ifndef CHMIX_CHANNELS_H
#define CHMIX_CHANNELS_H

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>

#include "chmix/qmath.h"

namespace chmix {

/// Probabilities (p0, p1, p2, p3) of applying (I, X, Y, Z).
struct PauliProbs {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    double operator[](std::size_t i) const { return p[i]; }
    /// Each entry in [-tol, 1 + tol] and the sum within tol of 1.
    bool is_valid(double tol = 1e-12) const;
};

/// Process matrix in the Pauli operator basis {I, X, Y, Z}:
/// Lambda(rho) = sum_mn chi(m, n) sigma_m rho sigma_n.
struct ChiMatrix {
    Matrix4c mat = Matrix4c::Zero();
};

struct DecayRates {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double gamma3 = 0.0;

    double min() const { return std::min({gamma1, gamma2, gamma3}); }
};

struct DesignFunctions {
    double a = 0.0;
    double b = 0.0;
    double q = 0.0;  // a + b
    double r = 0.0;  // a - b
    double w = 0.0;  // q/2 + r/2 == a
};

enum class FamilyKind {
    MarkovBitFlip,     // p(t) rho + (1 - p(t)) X rho X
    MarkovYFlip,       // p(t) rho + (1 - p(t)) Y rho Y
    MixedMM,           // 1/2 bit flip + 1/2 Y flip
    NmX1,              // bit flip with p1(t)
    NmX2,              // bit flip with p2(t) = cos^2 t
    MixedNMreplica,    // 2/3 NmX1 + 1/3 NmX2
    DepolQ,            // depolarizing with q(t)
    DepolR,            // depolarizing with r(t)
    DepolMixed,        // depolarizing with w(t)
    Mixture,           // result of mix() on arbitrary families
};

inline constexpr std::array<FamilyKind, 9> kAllFamilies = {
    FamilyKind::MarkovBitFlip, FamilyKind::MarkovYFlip, FamilyKind::MixedMM,
    FamilyKind::NmX1,          FamilyKind::NmX2,        FamilyKind::MixedNMreplica,
    FamilyKind::DepolQ,        FamilyKind::DepolR,      FamilyKind::DepolMixed,
};

std::string_view to_string(FamilyKind kind);

/// Immutable, cheap-to-copy handle on a channel family t -> PauliProbs.
class ChannelFamily {
   public:
    using Evaluator = std::function<std::array<double, 4>(double)>;

    ChannelFamily(FamilyKind kind, Evaluator probs, Evaluator derivative = nullptr);

    static ChannelFamily make(FamilyKind kind);

    FamilyKind kind() const { return kind_; }
    std::string_view name() const { return to_string(kind_); }

    /// Throws NegativeTime for t < 0.
    PauliProbs probs(double t) const;

    /// Closed-form dp/dt if one is registered.
    std::optional<std::array<double, 4>> derivative(double t) const;
    bool has_derivative() const { return static_cast<bool>(derivative_); }

    /// Same family with the registered derivative removed, which forces
    /// decay_rates onto finite differences.
    ChannelFamily without_derivative() const;

    /// Decay rates written out in closed form for the canonical families.
    std::optional<DecayRates> closed_form_rates(double t) const;

   private:
    friend ChannelFamily mix(double eta, const ChannelFamily &f1, const ChannelFamily &f2);

    FamilyKind kind_;
    Evaluator probs_;
    Evaluator derivative_;
};

/// (1 + e^-t) / 2.
double prob_mm(double t);

/// (p1(t), p2(t)) of the replicated non-Markovian pair.
std::pair<double, double> probs_nm_replica(double t);

/// The designed smooth functions of the depolarizing experiment.
DesignFunctions design_functions(double t);

/// Probabilities (1 - 3p/4, p/4, p/4, p/4).
PauliProbs depolarizing_probs(double p);

/// sum_a p_a sigma_a rho sigma_a. `rho` must be a valid density matrix.
Matrix2c apply_pauli(const PauliProbs &probs, const Matrix2c &rho);

/// The same map applied to an arbitrary 2x2 operator (no state checks).
Matrix2c apply_pauli_linear(const PauliProbs &probs, const Matrix2c &op);

/// lambda_a = sum_b H(a, b) p_b with H the 4x4 Hadamard matrix; the channel
/// maps sigma_a to lambda_a sigma_a.
std::array<double, 4> pauli_eigenvalues(const PauliProbs &probs);

/// Inverse of pauli_eigenvalues: p_a = 1/4 sum_b H(a, b) lambda_b.
PauliProbs probs_from_eigenvalues(const std::array<double, 4> &lambda);

inline constexpr double kDefaultRateStep = 1e-4;
inline constexpr double kSingularEigenvalueTol = 1e-10;

/// Time-local rates gamma_k(t), k = 1..3, of the generator
/// L(t) rho = sum_k gamma_k (sigma_k rho sigma_k - rho). Uses the registered
/// derivative when present and central differences with step `dt` otherwise.
/// Throws SingularEigenvalue where a Pauli eigenvalue vanishes.
DecayRates decay_rates(const ChannelFamily &family, double t, double dt = kDefaultRateStep);

/// Convex combination eta * f1 + (1 - eta) * f2. Throws EtaOutOfRange.
ChannelFamily mix(double eta, const ChannelFamily &f1, const ChannelFamily &f2);

/// diag(p0, p1, p2, p3).
ChiMatrix chi_ideal(const ChannelFamily &family, double t);
ChiMatrix chi_from_probs(const PauliProbs &probs);

bool is_density_matrix(const Matrix2c &rho, double tol = 1e-9);

}  // namespace chmix

#endif
