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
#include <numbers>

#include "chmix/channels.h"
#include "chmix/circuits.h"
#include "chmix/verify.h"
#include "oracles.h"
#include "test_util.h"

namespace chmix {
namespace {

using std::numbers::pi;

Matrix2c ket0() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = 1.0;
    return m;
}

Matrix2c ket1() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 1) = 1.0;
    return m;
}

double max_output_gap(const std::array<Matrix2c, 4> &a, const std::array<Matrix2c, 4> &b) {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, (a[k] - b[k]).cwiseAbs().maxCoeff());
    return worst;
}

std::array<Matrix2c, 4> pauli_outputs(const PauliProbs &p) {
    std::array<Matrix2c, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = apply_pauli(p, tomography_inputs()[k]);
    return out;
}

TEST(Angles, SingleExamples) {
    EXPECT_NEAR(angle_single(1.0), 0.0, 1e-15);
    EXPECT_NEAR(angle_single(0.0), pi, 1e-15);
    EXPECT_NEAR(angle_single(0.5), pi / 2, 1e-15);
    EXPECT_ERROR_KIND(angle_single(1.1), ErrorKind::ProbOutOfRange);
    EXPECT_ERROR_KIND(angle_single(-0.1), ErrorKind::ProbOutOfRange);
}

TEST(Angles, DepolExamplesAndIdentity) {
    EXPECT_NEAR(angle_depol(0.0), 0.0, 1e-15);
    EXPECT_NEAR(angle_depol(0.5), pi / 4, 1e-15);
    EXPECT_NEAR(angle_depol(0.75), pi / 3, 1e-15);
    EXPECT_NEAR(std::pow(std::cos(pi / 3), 2), 0.25, 1e-15);
    for (double p = 0.0; p <= 1.0; p += 0.01) {
        double th = angle_depol(p);
        EXPECT_GE(th, 0.0);
        EXPECT_LE(th, pi / 2 + 1e-15);
        EXPECT_NEAR(std::pow(std::cos(th), 2), 1.0 - p, 1e-12);
    }
    EXPECT_ERROR_KIND(angle_depol(2.0), ErrorKind::ProbOutOfRange);
}

TEST(Circuit, RejectsInvalidGates) {
    Circuit c(2);
    EXPECT_ERROR_KIND(c.add(Gate::x(2)), ErrorKind::InvalidCircuit);
    EXPECT_ERROR_KIND(c.add(Gate::cx(1, 1)), ErrorKind::InvalidCircuit);
    EXPECT_ERROR_KIND(c.add(Gate::ry(0, std::nan(""))), ErrorKind::InvalidCircuit);
    EXPECT_ERROR_KIND(c.add(Gate{GateKind::ControlledX, 0, std::nullopt, 0.0}), ErrorKind::InvalidCircuit);
    EXPECT_ERROR_KIND(Circuit(5), ErrorKind::InvalidCircuit);
    EXPECT_ERROR_KIND(Circuit(0), ErrorKind::InvalidCircuit);
}

TEST(GateUnitary, MatchesExplicitTensorProducts) {
    const int n = 3;
    struct Case {
        Gate gate;
        oracle::Mat expected;
    };
    std::vector<Case> cases = {
        {Gate::ry(1, 0.9), oracle::single(n, 1, oracle::ry(0.9))},
        {Gate::x(0), oracle::single(n, 0, oracle::pauli(1))},
        {Gate::y(2), oracle::single(n, 2, oracle::pauli(2))},
        {Gate::z(1), oracle::single(n, 1, oracle::pauli(3))},
        {Gate::cx(1, 2), oracle::controlled(n, 1, 2, oracle::pauli(1))},
        {Gate::cy(2, 0), oracle::controlled(n, 2, 0, oracle::pauli(2))},
        {Gate::cz(1, 0), oracle::controlled(n, 1, 0, oracle::pauli(3))},
        {Gate::cry(2, 1, 1.1), oracle::controlled(n, 2, 1, oracle::ry(1.1))},
    };
    for (const auto &c : cases) {
        ComplexMatrix u = gate_unitary(c.gate, n);
        EXPECT_LT((u - c.expected).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Simulate, Examples) {
    Circuit empty(3);
    ComplexMatrix rho = simulate(empty, ket0());
    ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
    expected(0, 0) = 1.0;
    EXPECT_LT((rho - expected).norm(), 1e-15);

    Circuit flip(1);
    flip.add(Gate::x(0));
    EXPECT_LT((reduced_state(simulate(flip, ket0()), 1, 0) - ket1()).norm(), 1e-15);

    const Matrix2c plus = tomography_inputs()[2];
    ComplexMatrix out = simulate(build_flip_circuit(0.5, FlipAxis::X), plus);
    EXPECT_LT((reduced_state(out, 2, 0) - plus).norm(), 1e-15);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
}

TEST(Simulate, PreservesTraceForAllBuilders) {
    std::mt19937_64 rng(8);
    for (const auto &b : circuit_builders()) {
        Circuit c = b.build(0.37);
        ComplexMatrix rho = simulate(c, testutil::random_state(rng));
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
        EXPECT_NEAR(rho.trace().imag(), 0.0, 1e-12);
    }
}

TEST(ChannelFromCircuit, IdentityCircuit) {
    auto out = channel_from_circuit(Circuit(2));
    for (int k = 0; k < 4; ++k) EXPECT_LT((out[k] - tomography_inputs()[k]).norm(), 1e-15);
}

TEST(FlipCircuit, Examples) {
    EXPECT_LT(max_output_gap(channel_from_circuit(build_flip_circuit(1.0, FlipAxis::X)), tomography_inputs()), 1e-15);
    auto out = channel_from_circuit(build_flip_circuit(0.0, FlipAxis::X));
    EXPECT_LT((out[0] - ket1()).norm(), 1e-15);
    double p = 0.6839;
    EXPECT_LT(max_output_gap(channel_from_circuit(build_flip_circuit(p, FlipAxis::X)),
                             pauli_outputs(PauliProbs{{p, 1 - p, 0, 0}})),
              1e-10);
    EXPECT_LT(max_output_gap(channel_from_circuit(build_flip_circuit(p, FlipAxis::Y)),
                             pauli_outputs(PauliProbs{{p, 0, 1 - p, 0}})),
              1e-10);
}

TEST(TotalMmCircuit, AncillaDistribution) {
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
        // The three preparation gates of the builder.
        Circuit prep(3);
        const Circuit full = build_total_mm_circuit(p);
        for (int k = 0; k < 3; ++k) prep.add(full.gates()[k]);
        Eigen::VectorXcd psi = simulate_statevector(prep);
        // Marginal over ancillas (q1, q2); system q0 stays |0>.
        auto prob = [&](int a1, int a2) { return std::norm(psi(a1 * 2 + a2)); };
        EXPECT_NEAR(prob(0, 0), p, 1e-12);
        EXPECT_NEAR(prob(0, 1), (1 - p) / 2, 1e-12);
        EXPECT_NEAR(prob(1, 1), (1 - p) / 2, 1e-12);
        EXPECT_NEAR(prob(1, 0), 0.0, 1e-12);
        EXPECT_NEAR(psi.squaredNorm(), 1.0, 1e-10);
    }
}

TEST(TotalMmCircuit, Channel) {
    EXPECT_LT(max_output_gap(channel_from_circuit(build_total_mm_circuit(1.0)), tomography_inputs()), 1e-12);
    EXPECT_LT(max_output_gap(channel_from_circuit(build_total_mm_circuit(0.8)),
                             pauli_outputs(PauliProbs{{0.8, 0.1, 0.1, 0.0}})),
              1e-9);
}

TEST(TotalMmCircuit, GlobalPhaseInsensitivity) {
    // Same preparation, but Y is applied directly instead of as Z X.
    for (double p : {0.2, 0.55, 0.9}) {
        Circuit original = build_total_mm_circuit(p);
        Circuit direct(3);
        for (int k = 0; k < 3; ++k) direct.add(original.gates()[k]);
        direct.add(Gate::cy(1, 0));
        direct.add(Gate::cx(2, 0));
        direct.add(Gate::cx(1, 0));
        EXPECT_LT(max_output_gap(channel_from_circuit(original), channel_from_circuit(direct)), 1e-12);
    }
}

TEST(DepolCircuit, Examples) {
    EXPECT_LT(max_output_gap(channel_from_circuit(build_depol_circuit(0.0)), tomography_inputs()), 1e-12);
    auto full = channel_from_circuit(build_depol_circuit(1.0));
    for (const auto &o : full) EXPECT_LT((o - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-9);
    auto out = channel_from_circuit(build_depol_circuit(0.4));
    // Bloch shrinkage along each axis is the Pauli eigenvalue.
    EXPECT_NEAR((out[0](0, 0) - out[0](1, 1)).real(), 0.6, 1e-9);
    EXPECT_NEAR(2.0 * out[2](0, 1).real(), 0.6, 1e-9);
    EXPECT_NEAR(-2.0 * out[3](0, 1).imag(), 0.6, 1e-9);
}

TEST(Builders, ChannelOracleEquivalenceOnRandomParameters) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto &b : circuit_builders()) {
        for (int k = 0; k < 50; ++k) {
            double p = u(rng);
            auto outputs = channel_from_circuit(b.build(p));
            auto probs = b.probs(p);
            for (int i = 0; i < 4; ++i) {
                ComplexMatrix expected = oracle::pauli_channel_bloch(probs.p, tomography_inputs()[i]);
                EXPECT_LT((ComplexMatrix(outputs[i]) - expected).cwiseAbs().maxCoeff(), 1e-9) << b.name << " p=" << p;
            }
        }
    }
}

TEST(SampleCounts, DeterministicOutcomes) {
    auto c = sample_counts(ket0(), MeasBasis::Z, 1000, 3);
    EXPECT_EQ(c.first, 1000);
    EXPECT_EQ(c.second, 0);
    EXPECT_EQ(sample_counts(ket0(), MeasBasis::X, 5000, 9), sample_counts(ket0(), MeasBasis::X, 5000, 9));
    EXPECT_ERROR_KIND(sample_counts(ket0(), MeasBasis::Z, 0, 1), ErrorKind::InvalidState);
    EXPECT_ERROR_KIND(sample_counts(Matrix2c::Identity(), MeasBasis::Z, 10, 1), ErrorKind::InvalidState);
}

TEST(SampleCounts, SymmetricCasesWithinThreeSigma) {
    const std::int64_t shots = 100000;
    const double sigma = std::sqrt(0.25 / shots);
    auto a = sample_counts(0.5 * Matrix2c::Identity(), MeasBasis::X, shots, 5);
    EXPECT_NEAR(static_cast<double>(a.first) / shots, 0.5, 3 * sigma);
    auto b = sample_counts(tomography_inputs()[2], MeasBasis::Y, shots, 6);
    EXPECT_NEAR(static_cast<double>(b.first) / shots, 0.5, 3 * sigma);
}

TEST(SampleCounts, ConvergesToBornProbabilities) {
    std::mt19937_64 rng(23);
    const std::int64_t shots = 10000;
    for (int k = 0; k < 20; ++k) {
        Matrix2c rho = testutil::random_state(rng);
        MeasBasis basis = static_cast<MeasBasis>(k % 3);
        double prob = (basis_projector(basis) * rho).trace().real();
        auto c = sample_counts(rho, basis, shots, 1000 + k);
        EXPECT_LT(std::abs(static_cast<double>(c.first) / shots - prob), 5.0 / std::sqrt(shots));
        EXPECT_EQ(c.first + c.second, shots);
    }
}

}  // namespace
}  // namespace chmix
