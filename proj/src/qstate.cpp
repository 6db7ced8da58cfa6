#include "vqclab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqclab/rng.hpp"

namespace vqclab {

namespace {

void check_qubit(const StateVector& state, int q, const char* what) {
    if (q < 0 || q >= state.n_qubits) {
        throw std::out_of_range(std::string(what) + " index " +
                                std::to_string(q) + " out of range for " +
                                std::to_string(state.n_qubits) + " qubits");
    }
}

} // namespace

std::string to_string(Axis axis) {
    switch (axis) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
    }
    return "?";
}

Axis axis_from_string(const std::string& name) {
    if (name == "x") return Axis::X;
    if (name == "y") return Axis::Y;
    if (name == "z") return Axis::Z;
    throw ConfigError("unknown rotation axis '" + name +
                      "' (expected x, y or z)");
}

StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("qubit count must be in [1, " +
                          std::to_string(kMaxQubits) + "], got " +
                          std::to_string(n_qubits));
    }
    StateVector state;
    state.n_qubits = n_qubits;
    state.amplitudes = CVec::Zero(Eigen::Index(1) << n_qubits);
    state.amplitudes[0] = Complex(1.0, 0.0);
    return state;
}

Gate1Q h_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    Gate1Q g;
    g << s, s, s, -s;
    return g;
}

Gate1Q x_gate() {
    Gate1Q g;
    g << 0, 1, 1, 0;
    return g;
}

Gate1Q rx_gate(double theta) {
    const double c = std::cos(theta / 2.0);
    const Complex ms(0.0, -std::sin(theta / 2.0));
    Gate1Q g;
    g << c, ms, ms, c;
    return g;
}

Gate1Q ry_gate(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Gate1Q g;
    g << c, -s, s, c;
    return g;
}

Gate1Q rz_gate(double theta) {
    Gate1Q g;
    g << std::polar(1.0, -theta / 2.0), 0, 0, std::polar(1.0, theta / 2.0);
    return g;
}

Gate1Q rotation_gate(Axis axis, double theta) {
    switch (axis) {
    case Axis::X: return rx_gate(theta);
    case Axis::Y: return ry_gate(theta);
    case Axis::Z: return rz_gate(theta);
    }
    throw std::invalid_argument("unknown rotation axis");
}

StateVector& apply_1q(StateVector& state, const Gate1Q& gate, int q) {
    check_qubit(state, q, "qubit");
    const Eigen::Index dim = state.dim();
    const Eigen::Index mask = Eigen::Index(1) << q;
    const Complex g00 = gate(0, 0), g01 = gate(0, 1);
    const Complex g10 = gate(1, 0), g11 = gate(1, 1);
    Complex* amp = state.amplitudes.data();
    // Visit each (i0, i1 = i0 | mask) pair once: i0 runs over all indices
    // with bit q clear.
    for (Eigen::Index base = 0; base < dim; base += 2 * mask) {
        for (Eigen::Index off = 0; off < mask; ++off) {
            const Eigen::Index i0 = base + off;
            const Eigen::Index i1 = i0 + mask;
            const Complex a0 = amp[i0];
            const Complex a1 = amp[i1];
            amp[i0] = g00 * a0 + g01 * a1;
            amp[i1] = g10 * a0 + g11 * a1;
        }
    }
    return state;
}

StateVector& apply_phase(StateVector& state, int q, double phi) {
    check_qubit(state, q, "qubit");
    const Eigen::Index dim = state.dim();
    const Eigen::Index mask = Eigen::Index(1) << q;
    const Complex phase = std::polar(1.0, phi);
    Complex* amp = state.amplitudes.data();
    for (Eigen::Index base = 0; base < dim; base += 2 * mask) {
        for (Eigen::Index off = 0; off < mask; ++off) {
            amp[base + off + mask] *= phase;
        }
    }
    return state;
}

StateVector& apply_cnot(StateVector& state, int control, int target) {
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    check_qubit(state, control, "control");
    check_qubit(state, target, "target");
    const Eigen::Index dim = state.dim();
    const Eigen::Index cmask = Eigen::Index(1) << control;
    const Eigen::Index tmask = Eigen::Index(1) << target;
    Complex* amp = state.amplitudes.data();
    // Swap partner indices once each: control bit set, target bit clear.
    for (Eigen::Index i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amp[i], amp[i | tmask]);
        }
    }
    return state;
}

double prob_zero(const StateVector& state, int q) {
    check_qubit(state, q, "qubit");
    const Eigen::Index dim = state.dim();
    const Eigen::Index mask = Eigen::Index(1) << q;
    const Complex* amp = state.amplitudes.data();
    double p = 0.0;
    for (Eigen::Index base = 0; base < dim; base += 2 * mask) {
        for (Eigen::Index off = 0; off < mask; ++off) {
            p += std::norm(amp[base + off]);
        }
    }
    return p;
}

double prob_one(const StateVector& state, int q) {
    check_qubit(state, q, "qubit");
    const Eigen::Index dim = state.dim();
    const Eigen::Index mask = Eigen::Index(1) << q;
    const Complex* amp = state.amplitudes.data();
    double p = 0.0;
    for (Eigen::Index base = 0; base < dim; base += 2 * mask) {
        for (Eigen::Index off = 0; off < mask; ++off) {
            p += std::norm(amp[base + off + mask]);
        }
    }
    return p;
}

double prob_zero_sampled(const StateVector& state, int q, int shots,
                         uint64_t seed) {
    check_qubit(state, q, "qubit");
    if (shots < 1) {
        throw std::invalid_argument("shot count must be >= 1");
    }
    const Eigen::Index dim = state.dim();
    const Eigen::Index mask = Eigen::Index(1) << q;
    // Cumulative distribution over basis states.
    std::vector<double> cdf(static_cast<size_t>(dim));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        acc += std::norm(state.amplitudes[i]);
        cdf[static_cast<size_t>(i)] = acc;
    }
    Rng rng(seed);
    long zeros = 0;
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<Eigen::Index>(it - cdf.begin());
        if (!(idx & mask)) {
            ++zeros;
        }
    }
    return static_cast<double>(zeros) / static_cast<double>(shots);
}

double state_norm(const StateVector& state) {
    return state.amplitudes.norm();
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("states differ in qubit count");
    }
    return a.amplitudes.dot(b.amplitudes);
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

} // namespace vqclab
