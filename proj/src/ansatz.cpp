#include "vqclab/ansatz.hpp"

#include <stdexcept>

#include "vqclab/featuremaps.hpp"

namespace vqclab {

std::string to_string(Topology t) {
    switch (t) {
    case Topology::Linear: return "linear";
    case Topology::Circular: return "circular";
    case Topology::Full: return "full";
    }
    return "?";
}

Topology topology_from_string(const std::string& name) {
    if (name == "linear") return Topology::Linear;
    if (name == "circular") return Topology::Circular;
    if (name == "full") return Topology::Full;
    throw ConfigError("unknown topology '" + name +
                      "' (expected linear, circular or full)");
}

std::vector<std::pair<int, int>> entanglement_pairs(Topology t, int n_qubits) {
    if (n_qubits < 2) {
        throw ConfigError("entanglement needs at least 2 qubits, got " +
                          std::to_string(n_qubits));
    }
    std::vector<std::pair<int, int>> pairs;
    switch (t) {
    case Topology::Linear:
        for (int i = 0; i + 1 < n_qubits; ++i) pairs.emplace_back(i, i + 1);
        break;
    case Topology::Circular:
        for (int i = 0; i + 1 < n_qubits; ++i) pairs.emplace_back(i, i + 1);
        pairs.emplace_back(n_qubits - 1, 0);
        break;
    case Topology::Full:
        for (int i = 0; i < n_qubits; ++i)
            for (int j = i + 1; j < n_qubits; ++j) pairs.emplace_back(i, j);
        break;
    }
    return pairs;
}

AnsatzTemplate build_ansatz(int n_qubits, int layers, Topology topology) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("ansatz qubit count must be in [1, " +
                          std::to_string(kMaxQubits) + "], got " +
                          std::to_string(n_qubits));
    }
    if (layers < 1) {
        throw ConfigError("ansatz needs at least 1 layer, got " +
                          std::to_string(layers));
    }
    AnsatzTemplate tpl;
    tpl.n_qubits = n_qubits;
    tpl.layers = layers;
    tpl.topology = topology;
    tpl.parameter_count = n_qubits * (layers + 1);
    const auto pairs =
        n_qubits >= 2 ? entanglement_pairs(topology, n_qubits)
                      : std::vector<std::pair<int, int>>();
    for (int layer = 0; layer < layers; ++layer) {
        for (int q = 0; q < n_qubits; ++q) {
            tpl.ops.push_back(rot_slot_op(q, Axis::Y, layer * n_qubits + q));
        }
        for (const auto& [c, t] : pairs) {
            tpl.ops.push_back(cnot_op(c, t));
        }
    }
    for (int q = 0; q < n_qubits; ++q) {
        tpl.ops.push_back(rot_slot_op(q, Axis::Y, layers * n_qubits + q));
    }
    return tpl;
}

StateVector& apply_ansatz(StateVector& state, const AnsatzTemplate& tpl,
                          const Vec& theta) {
    if (state.n_qubits != tpl.n_qubits) {
        throw std::invalid_argument("state has " +
                                    std::to_string(state.n_qubits) +
                                    " qubits but ansatz expects " +
                                    std::to_string(tpl.n_qubits));
    }
    if (theta.size() != tpl.parameter_count) {
        throw std::invalid_argument(
            "parameter vector has " + std::to_string(theta.size()) +
            " entries but ansatz expects " +
            std::to_string(tpl.parameter_count));
    }
    return apply_ops(state, tpl.ops, theta);
}

CircuitStats circuit_stats(const EncoderConfig& cfg,
                           const AnsatzTemplate& tpl) {
    if (cfg.n_qubits != tpl.n_qubits) {
        throw std::invalid_argument("encoder is configured for " +
                                    std::to_string(cfg.n_qubits) +
                                    " qubits but ansatz has " +
                                    std::to_string(tpl.n_qubits));
    }
    // Counts are structural: any in-range feature vector yields the same
    // gate list shape. Amplitude encoding emits no gates.
    std::vector<GateOp> all;
    if (cfg.scheme != Scheme::Amplitude) {
        all = encoder_ops(cfg, Vec::Zero(cfg.n_qubits));
    }
    CircuitStats stats;
    for (const GateOp& op : all) {
        if (op.kind == OpKind::Cnot) ++stats.encoder_cnot_count;
    }
    all.insert(all.end(), tpl.ops.begin(), tpl.ops.end());
    for (const GateOp& op : all) {
        switch (op.kind) {
        case OpKind::H: ++stats.hadamard_count; break;
        case OpKind::X: break;
        case OpKind::Phase: ++stats.phase_gate_count; break;
        case OpKind::Rotation: ++stats.rotation_count; break;
        case OpKind::Cnot: ++stats.cnot_count; break;
        }
    }
    stats.ansatz_cnot_count = stats.cnot_count - stats.encoder_cnot_count;
    stats.depth = circuit_depth(all, tpl.n_qubits);
    return stats;
}

} // namespace vqclab
