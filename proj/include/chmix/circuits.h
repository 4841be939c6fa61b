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

// Ancilla circuits that realize the channel families, and an exact
// density-matrix simulator for them.
//
// Register convention (used everywhere in this file and nowhere else):
// qubit 0 is the system and is the most significant bit of the basis index,
// so |q0 q1 q2 ...> has index q0 * 2^(n-1) + q1 * 2^(n-2) + ... . Ancillas
// always start in |0>. Tests only compare system marginals, so nothing
// outside this module depends on the ordering.

#ifndef CHMIX_CIRCUITS_H
#define CHMIX_CIRCUITS_H

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chmix/qmath.h"

namespace chmix {

enum class GateKind { RY, X, Y, Z, ControlledX, ControlledY, ControlledZ, ControlledRY };

struct Gate {
    GateKind kind = GateKind::X;
    int target = 0;
    std::optional<int> control;
    double theta = 0.0;

    static Gate ry(int target, double theta) { return {GateKind::RY, target, std::nullopt, theta}; }
    static Gate x(int target) { return {GateKind::X, target, std::nullopt, 0.0}; }
    static Gate y(int target) { return {GateKind::Y, target, std::nullopt, 0.0}; }
    static Gate z(int target) { return {GateKind::Z, target, std::nullopt, 0.0}; }
    static Gate cx(int control, int target) { return {GateKind::ControlledX, target, control, 0.0}; }
    static Gate cy(int control, int target) { return {GateKind::ControlledY, target, control, 0.0}; }
    static Gate cz(int control, int target) { return {GateKind::ControlledZ, target, control, 0.0}; }
    static Gate cry(int control, int target, double theta) {
        return {GateKind::ControlledRY, target, control, theta};
    }

    /// The 2x2 matrix applied to the target (when the control, if any, is 1).
    Matrix2c local_matrix() const;
};

inline constexpr int kMaxQubits = 4;
inline constexpr int kSystemQubit = 0;

class Circuit {
   public:
    explicit Circuit(int num_qubits);

    /// Throws InvalidCircuit on bad indices, control == target, or non-finite angles.
    Circuit &add(const Gate &gate);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }

   private:
    int num_qubits_;
    std::vector<Gate> gates_;
};

/// Full-register unitary of one gate.
ComplexMatrix gate_unitary(const Gate &gate, int num_qubits);

/// theta = 2 arccos(sqrt(p)): RY(theta)|0> has weight p on |0>.
double angle_single(double p);

/// theta = arccos(1 - 2p) / 2: three independent flips at this angle give a
/// depolarizing channel with parameter p.
double angle_depol(double p);

enum class FlipAxis { X, Y };

/// System + one ancilla: RY(theta) on the ancilla, then the controlled flip.
Circuit build_flip_circuit(double p, FlipAxis axis);

/// System + two ancillas realizing p rho + (1-p)/2 (X rho X + Y rho Y).
Circuit build_total_mm_circuit(double p);

/// System + three ancillas realizing the depolarizing channel at parameter p.
Circuit build_depol_circuit(double p);

/// Exact evolution of system_input (x) |0..0><0..0| through the circuit.
ComplexMatrix simulate(const Circuit &circuit, const Matrix2c &system_input);

/// Pure-state evolution from |0..0>; used to inspect ancilla preparation.
Eigen::VectorXcd simulate_statevector(const Circuit &circuit);

/// Partial trace over everything but qubit `keep`.
Matrix2c reduced_state(const ComplexMatrix &rho, int num_qubits, int keep);

/// Density matrices |0><0|, |1><1|, |+><+|, |+y><+y|, in that order.
const std::array<Matrix2c, 4> &tomography_inputs();

/// System outputs for the four tomography inputs.
std::array<Matrix2c, 4> channel_from_circuit(const Circuit &circuit);

enum class MeasBasis { Z, X, Y };

/// Projector onto the "0" outcome of the basis: |0><0|, |+><+|, |+y><+y|.
const Matrix2c &basis_projector(MeasBasis basis);

/// Binomial shot sampling of the "0" outcome. Deterministic in `seed`
/// (std::mt19937_64 seeded with it).
std::pair<std::int64_t, std::int64_t> sample_counts(const Matrix2c &system_state, MeasBasis basis,
                                                    std::int64_t shots, std::uint64_t seed);

}  // namespace chmix

#endif
