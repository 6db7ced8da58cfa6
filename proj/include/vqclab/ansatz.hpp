// Trainable circuit: per layer one RY rotation on every qubit followed by
// the topology's CNOT pattern, closed by a final RY layer. Parameter slot
// for layer l, qubit q is l*n_qubits + q.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vqclab/circuit.hpp"
#include "vqclab/common.hpp"

namespace vqclab {

enum class Topology { Linear, Circular, Full };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& name);

// Linear: (0,1)..(n-2,n-1); Circular: linear plus (n-1,0); Full: all i<j in
// lexicographic order. Pairs are (control, target) as written.
std::vector<std::pair<int, int>> entanglement_pairs(Topology t, int n_qubits);

struct AnsatzTemplate {
    int n_qubits = 0;
    int layers = 0;
    Topology topology = Topology::Circular;
    int parameter_count = 0;
    std::vector<GateOp> ops; // rotation slots + CNOTs, application order
};

AnsatzTemplate build_ansatz(int n_qubits, int layers, Topology topology);

StateVector& apply_ansatz(StateVector& state, const AnsatzTemplate& tpl,
                          const Vec& theta);

struct CircuitStats {
    int cnot_count = 0; // encoder + ansatz combined
    int phase_gate_count = 0;
    int rotation_count = 0;
    int hadamard_count = 0;
    int depth = 0; // longest per-qubit dependency chain, full circuit
    int encoder_cnot_count = 0;
    int ansatz_cnot_count = 0;
};

struct EncoderConfig; // featuremaps.hpp

// Gate counts and depth for the full encode-then-ansatz circuit. Counts
// depend only on structure (scheme, topology, repetitions, layers), never
// on feature values; amplitude encoding contributes no gates.
CircuitStats circuit_stats(const EncoderConfig& cfg, const AnsatzTemplate& tpl);

} // namespace vqclab
