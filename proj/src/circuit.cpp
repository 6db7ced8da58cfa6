#include "vqclab/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace vqclab {

GateOp h_op(int q) {
    GateOp op;
    op.kind = OpKind::H;
    op.q0 = q;
    return op;
}

GateOp x_op(int q) {
    GateOp op;
    op.kind = OpKind::X;
    op.q0 = q;
    return op;
}

GateOp p_op(int q, double phi) {
    GateOp op;
    op.kind = OpKind::Phase;
    op.q0 = q;
    op.angle = phi;
    return op;
}

GateOp rot_op(int q, Axis axis, double angle) {
    GateOp op;
    op.kind = OpKind::Rotation;
    op.q0 = q;
    op.axis = axis;
    op.angle = angle;
    return op;
}

GateOp rot_slot_op(int q, Axis axis, int slot) {
    GateOp op;
    op.kind = OpKind::Rotation;
    op.q0 = q;
    op.axis = axis;
    op.slot = slot;
    return op;
}

GateOp cnot_op(int control, int target) {
    GateOp op;
    op.kind = OpKind::Cnot;
    op.q0 = control;
    op.q1 = target;
    return op;
}

StateVector& apply_ops(StateVector& state, const std::vector<GateOp>& ops,
                       const Vec& theta) {
    for (const GateOp& op : ops) {
        switch (op.kind) {
        case OpKind::H:
            apply_1q(state, h_gate(), op.q0);
            break;
        case OpKind::X:
            apply_1q(state, x_gate(), op.q0);
            break;
        case OpKind::Phase:
            apply_phase(state, op.q0, op.angle);
            break;
        case OpKind::Rotation: {
            double angle = op.angle;
            if (op.slot >= 0) {
                if (op.slot >= theta.size()) {
                    throw std::out_of_range(
                        "rotation slot " + std::to_string(op.slot) +
                        " exceeds parameter vector of size " +
                        std::to_string(theta.size()));
                }
                angle = theta[op.slot];
            }
            apply_1q(state, rotation_gate(op.axis, angle), op.q0);
            break;
        }
        case OpKind::Cnot:
            apply_cnot(state, op.q0, op.q1);
            break;
        }
    }
    return state;
}

namespace {

const char* axis_name(Axis axis) {
    switch (axis) {
    case Axis::X: return "RX";
    case Axis::Y: return "RY";
    case Axis::Z: return "RZ";
    }
    return "R?";
}

} // namespace

std::string circuit_text(const std::vector<GateOp>& ops) {
    std::string out;
    char buf[64];
    for (const GateOp& op : ops) {
        switch (op.kind) {
        case OpKind::H:
            std::snprintf(buf, sizeof(buf), "H q%d", op.q0);
            break;
        case OpKind::X:
            std::snprintf(buf, sizeof(buf), "X q%d", op.q0);
            break;
        case OpKind::Phase:
            std::snprintf(buf, sizeof(buf), "P(%.4f) q%d", op.angle, op.q0);
            break;
        case OpKind::Rotation:
            if (op.slot >= 0) {
                std::snprintf(buf, sizeof(buf), "%s(t%d) q%d",
                              axis_name(op.axis), op.slot, op.q0);
            } else {
                std::snprintf(buf, sizeof(buf), "%s(%.4f) q%d",
                              axis_name(op.axis), op.angle, op.q0);
            }
            break;
        case OpKind::Cnot:
            std::snprintf(buf, sizeof(buf), "CNOT q%d q%d", op.q0, op.q1);
            break;
        }
        out += buf;
        out += '\n';
    }
    return out;
}

int circuit_depth(const std::vector<GateOp>& ops, int n_qubits) {
    if (n_qubits < 1) {
        return 0;
    }
    std::vector<int> level(static_cast<size_t>(n_qubits), 0);
    for (const GateOp& op : ops) {
        if (op.kind == OpKind::Cnot) {
            const int next = std::max(level[static_cast<size_t>(op.q0)],
                                      level[static_cast<size_t>(op.q1)]) + 1;
            level[static_cast<size_t>(op.q0)] = next;
            level[static_cast<size_t>(op.q1)] = next;
        } else {
            ++level[static_cast<size_t>(op.q0)];
        }
    }
    return *std::max_element(level.begin(), level.end());
}

} // namespace vqclab
