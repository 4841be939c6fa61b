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

#include "chmix/circuits.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "chmix/channels.h"
#include "chmix/error.h"

namespace chmix {

namespace {

int bit_of(int num_qubits, int qubit) { return num_qubits - 1 - qubit; }

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::ProbOutOfRange, "p = " + std::to_string(p));
    }
}

Matrix2c ry_matrix(double theta) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    Matrix2c m;
    m << c, -s, s, c;
    return m;
}

}  // namespace

Matrix2c Gate::local_matrix() const {
    switch (kind) {
        case GateKind::RY:
        case GateKind::ControlledRY:
            return ry_matrix(theta);
        case GateKind::X:
        case GateKind::ControlledX:
            return pauli(1);
        case GateKind::Y:
        case GateKind::ControlledY:
            return pauli(2);
        case GateKind::Z:
        case GateKind::ControlledZ:
            return pauli(3);
    }
    return Matrix2c::Identity();
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw Error(ErrorKind::InvalidCircuit, "num_qubits must be in [1, 4], got " + std::to_string(num_qubits));
    }
}

Circuit &Circuit::add(const Gate &gate) {
    auto in_range = [this](int q) { return q >= 0 && q < num_qubits_; };
    if (!in_range(gate.target)) {
        throw Error(ErrorKind::InvalidCircuit, "target index out of range");
    }
    bool controlled = gate.kind == GateKind::ControlledX || gate.kind == GateKind::ControlledY ||
                      gate.kind == GateKind::ControlledZ || gate.kind == GateKind::ControlledRY;
    if (controlled != gate.control.has_value()) {
        throw Error(ErrorKind::InvalidCircuit, "control presence does not match gate kind");
    }
    if (gate.control && (!in_range(*gate.control) || *gate.control == gate.target)) {
        throw Error(ErrorKind::InvalidCircuit, "bad control index");
    }
    if (!std::isfinite(gate.theta)) {
        throw Error(ErrorKind::InvalidCircuit, "non-finite rotation angle");
    }
    gates_.push_back(gate);
    return *this;
}

ComplexMatrix gate_unitary(const Gate &gate, int num_qubits) {
    const int dim = 1 << num_qubits;
    const Matrix2c local = gate.local_matrix();
    const int tbit = bit_of(num_qubits, gate.target);
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        if (gate.control && ((col >> bit_of(num_qubits, *gate.control)) & 1) == 0) {
            u(col, col) = 1.0;
            continue;
        }
        int in_bit = (col >> tbit) & 1;
        for (int out_bit = 0; out_bit < 2; ++out_bit) {
            int row = (col & ~(1 << tbit)) | (out_bit << tbit);
            u(row, col) += local(out_bit, in_bit);
        }
    }
    return u;
}

double angle_single(double p) {
    require_probability(p);
    return 2.0 * std::acos(std::sqrt(p));
}

double angle_depol(double p) {
    require_probability(p);
    return 0.5 * std::acos(1.0 - 2.0 * p);
}

Circuit build_flip_circuit(double p, FlipAxis axis) {
    double theta = angle_single(p);
    Circuit c(2);
    c.add(Gate::ry(1, theta));
    c.add(axis == FlipAxis::X ? Gate::cx(1, kSystemQubit) : Gate::cy(1, kSystemQubit));
    return c;
}

Circuit build_total_mm_circuit(double p) {
    double theta1 = angle_single(p);
    double theta2 = std::numbers::pi / 2.0;
    Circuit c(3);
    c.add(Gate::ry(1, theta1));
    c.add(Gate::cx(1, 2));
    c.add(Gate::cry(2, 1, theta2));
    c.add(Gate::cx(2, kSystemQubit));
    c.add(Gate::cz(1, kSystemQubit));
    return c;
}

Circuit build_depol_circuit(double p) {
    double theta = angle_depol(p);
    Circuit c(4);
    c.add(Gate::ry(1, theta));
    c.add(Gate::ry(2, theta));
    c.add(Gate::ry(3, theta));
    c.add(Gate::cx(1, kSystemQubit));
    c.add(Gate::cy(2, kSystemQubit));
    c.add(Gate::cz(3, kSystemQubit));
    return c;
}

ComplexMatrix simulate(const Circuit &circuit, const Matrix2c &system_input) {
    const int n = circuit.num_qubits();
    const int ancilla_dim = 1 << (n - 1);
    ComplexMatrix ancillas = ComplexMatrix::Zero(ancilla_dim, ancilla_dim);
    ancillas(0, 0) = 1.0;
    ComplexMatrix rho = kron(system_input, ancillas);
    for (const Gate &gate : circuit.gates()) {
        ComplexMatrix u = gate_unitary(gate, n);
        rho = u * rho * u.adjoint();
    }
    return rho;
}

Eigen::VectorXcd simulate_statevector(const Circuit &circuit) {
    const int n = circuit.num_qubits();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(1 << n);
    psi(0) = 1.0;
    for (const Gate &gate : circuit.gates()) {
        psi = gate_unitary(gate, n) * psi;
    }
    return psi;
}

Matrix2c reduced_state(const ComplexMatrix &rho, int num_qubits, int keep) {
    const int dim = 1 << num_qubits;
    const int kbit = bit_of(num_qubits, keep);
    Matrix2c out = Matrix2c::Zero();
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            // Only pairs that agree on every traced-out bit contribute.
            if (((i ^ j) & ~(1 << kbit)) != 0) {
                continue;
            }
            out((i >> kbit) & 1, (j >> kbit) & 1) += rho(i, j);
        }
    }
    return out;
}

const std::array<Matrix2c, 4> &tomography_inputs() {
    static const std::array<Matrix2c, 4> kInputs = [] {
        const cplx i(0.0, 1.0);
        std::array<Matrix2c, 4> in;
        in[0] << 1, 0, 0, 0;
        in[1] << 0, 0, 0, 1;
        in[2] << 0.5, 0.5, 0.5, 0.5;
        in[3] << 0.5, -0.5 * i, 0.5 * i, 0.5;
        return in;
    }();
    return kInputs;
}

std::array<Matrix2c, 4> channel_from_circuit(const Circuit &circuit) {
    std::array<Matrix2c, 4> outputs;
    const auto &inputs = tomography_inputs();
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        outputs[k] = reduced_state(simulate(circuit, inputs[k]), circuit.num_qubits(), kSystemQubit);
    }
    return outputs;
}

const Matrix2c &basis_projector(MeasBasis basis) {
    const auto &in = tomography_inputs();
    switch (basis) {
        case MeasBasis::Z: return in[0];
        case MeasBasis::X: return in[2];
        case MeasBasis::Y: return in[3];
    }
    return in[0];
}

std::pair<std::int64_t, std::int64_t> sample_counts(const Matrix2c &system_state, MeasBasis basis,
                                                    std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw Error(ErrorKind::InvalidState, "shots must be positive");
    }
    if (!is_density_matrix(system_state)) {
        throw Error(ErrorKind::InvalidState, "measured state is not a density matrix");
    }
    double prob = std::clamp((basis_projector(basis) * system_state).trace().real(), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::int64_t> draw(shots, prob);
    std::int64_t zeros = draw(rng);
    return {zeros, shots - zeros};
}

}  // namespace chmix
