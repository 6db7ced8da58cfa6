// Flat gate-list representation of a circuit. Feature-map encoders emit
// fully bound ops (every angle fixed by the input sample); ansatz templates
// emit rotation ops whose angle is looked up in a parameter vector at
// application time via `slot`.
#pragma once

#include <string>
#include <vector>

#include "vqclab/common.hpp"
#include "vqclab/qstate.hpp"

namespace vqclab {

enum class OpKind { H, X, Phase, Rotation, Cnot };

struct GateOp {
    OpKind kind = OpKind::H;
    int q0 = 0;          // acted-on qubit; control for CNOT
    int q1 = -1;         // CNOT target, unused otherwise
    Axis axis = Axis::Y; // rotation axis when kind == Rotation
    double angle = 0.0;  // fixed angle for Phase and bound Rotation
    int slot = -1;       // >= 0: angle is theta[slot] instead of `angle`
};

GateOp h_op(int q);
GateOp x_op(int q);
GateOp p_op(int q, double phi);
GateOp rot_op(int q, Axis axis, double angle);
GateOp rot_slot_op(int q, Axis axis, int slot);
GateOp cnot_op(int control, int target);

// Applies ops in order. Ops with slot >= 0 read their angle from theta;
// passing a theta too short for the largest slot throws std::out_of_range.
StateVector& apply_ops(StateVector& state, const std::vector<GateOp>& ops,
                       const Vec& theta = Vec());

// One gate per line, e.g. "H q0", "P(1.5708) q2", "RY(t3) q1",
// "CNOT q0 q1". Unbound rotation slots print as tN.
std::string circuit_text(const std::vector<GateOp>& ops);

// Number of layers in a greedy per-qubit schedule: each gate starts as
// soon as every qubit it touches is free.
int circuit_depth(const std::vector<GateOp>& ops, int n_qubits);

} // namespace vqclab
