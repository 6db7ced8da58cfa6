// Classical-to-quantum encodings. ZZ and Angle realize circuits over the
// gate set (H, P, RY/RX/RZ, CNOT); Amplitude writes the normalized feature
// vector straight into the state.
#pragma once

#include <string>
#include <vector>

#include "vqclab/ansatz.hpp"
#include "vqclab/circuit.hpp"
#include "vqclab/common.hpp"
#include "vqclab/qstate.hpp"

namespace vqclab {

enum class Scheme { ZZ, Angle, Amplitude };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct EncoderConfig {
    Scheme scheme = Scheme::ZZ;
    Topology topology = Topology::Circular; // pair set for ZZ interactions
    int repetitions = 2;
    Axis rotation_axis = Axis::Y; // Angle scheme only
    int n_qubits = 4;
};

// repetitions: 2 for ZZ, 1 otherwise.
EncoderConfig default_encoder(Scheme scheme, Topology topology, int n_qubits);

// Qubits needed for n_features inputs. ZZ/Angle use one qubit per feature.
// Amplitude defaults to one qubit per feature too (zero-padding the 2^n
// slots) so every scheme drives the same ansatz width; compact mode packs
// into ceil(log2(n_features)) qubits instead.
int required_qubits(Scheme scheme, int n_features, bool compact_amplitude);

// Gate realization for ZZ/Angle encodings (amplitude has none and throws).
// Every angle in the returned list is bound to x.
std::vector<GateOp> encoder_ops(const EncoderConfig& cfg, const Vec& x);

// Per repetition: H on every qubit, P(2*x_i) on qubit i, then per pair
// (i,j): CNOT(i,j), P(2*x_i*x_j) on j, CNOT(i,j).
StateVector encode_zz(const Vec& x, const EncoderConfig& cfg);

// Per repetition: R_axis(x_i) on qubit i.
StateVector encode_angle(const Vec& x, const EncoderConfig& cfg);

// amplitudes[i] = x_i / ||x|| for i < len(x), zero elsewhere.
StateVector encode_amplitude(const Vec& x, const EncoderConfig& cfg);

StateVector encode(const Vec& x, const EncoderConfig& cfg);

} // namespace vqclab
