#pragma once

#include <cstdint>
#include <string>

#include "vqclab/common.hpp"

// Exact dense statevector simulator. A state over n qubits is a length-2^n
// complex amplitude vector; qubit q is bit q of the basis index, with qubit 0
// the least-significant bit. Gates update amplitudes in place through
// bit-mask strided kernels; every kernel preserves the L2 norm.

namespace vqclab {

inline constexpr int kMaxQubits = 10;

enum class Axis { X, Y, Z };

std::string to_string(Axis axis);
Axis axis_from_string(const std::string& name);

struct StateVector {
    int n_qubits = 0;
    CVec amplitudes;

    Eigen::Index dim() const { return amplitudes.size(); }
};

// |0...0> on n_qubits in [1, 10].
StateVector zero_state(int n_qubits);

Gate1Q h_gate();
Gate1Q x_gate();
Gate1Q rx_gate(double theta);
Gate1Q ry_gate(double theta);
Gate1Q rz_gate(double theta);
Gate1Q rotation_gate(Axis axis, double theta);

// Applies a 2x2 unitary to qubit q. Returns the updated state.
StateVector& apply_1q(StateVector& state, const Gate1Q& gate, int q);

// Multiplies every amplitude whose bit q is 1 by e^{i phi}.
StateVector& apply_phase(StateVector& state, int q, double phi);

// Flips the target bit of every basis state whose control bit is 1.
StateVector& apply_cnot(StateVector& state, int control, int target);

// Probability of reading 0 on qubit q, computed exactly from amplitudes.
double prob_zero(const StateVector& state, int q);
double prob_one(const StateVector& state, int q);

// Shot-based estimate of prob_zero: multinomial sampling over |amplitude|^2.
double prob_zero_sampled(const StateVector& state, int q, int shots,
                         uint64_t seed);

double state_norm(const StateVector& state);
Complex inner_product(const StateVector& a, const StateVector& b);

// |<a|b>|^2; global-phase insensitive state comparison.
double fidelity(const StateVector& a, const StateVector& b);

} // namespace vqclab
