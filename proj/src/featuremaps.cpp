#include "vqclab/featuremaps.hpp"

#include <cmath>
#include <stdexcept>

namespace vqclab {

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::ZZ: return "zz";
    case Scheme::Angle: return "angle";
    case Scheme::Amplitude: return "amplitude";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "zz") return Scheme::ZZ;
    if (name == "angle") return Scheme::Angle;
    if (name == "amplitude") return Scheme::Amplitude;
    throw ConfigError("unknown encoding scheme '" + name +
                      "' (expected zz, angle or amplitude)");
}

EncoderConfig default_encoder(Scheme scheme, Topology topology,
                              int n_qubits) {
    EncoderConfig cfg;
    cfg.scheme = scheme;
    cfg.topology = topology;
    cfg.repetitions = scheme == Scheme::ZZ ? 2 : 1;
    cfg.n_qubits = n_qubits;
    return cfg;
}

int required_qubits(Scheme scheme, int n_features, bool compact_amplitude) {
    if (n_features < 1) {
        throw ConfigError("need at least 1 feature, got " +
                          std::to_string(n_features));
    }
    if (scheme == Scheme::Amplitude && compact_amplitude) {
        int n = 1;
        while ((Eigen::Index(1) << n) < n_features) ++n;
        return n;
    }
    return n_features;
}

namespace {

void check_dimension(const EncoderConfig& cfg, const Vec& x, Scheme expect) {
    if (cfg.scheme != expect) {
        throw std::invalid_argument("encoder config scheme is " +
                                    to_string(cfg.scheme) + ", expected " +
                                    to_string(expect));
    }
    if (cfg.repetitions < 1) {
        throw ConfigError("encoder repetitions must be >= 1, got " +
                          std::to_string(cfg.repetitions));
    }
    if (expect == Scheme::Amplitude) {
        if (x.size() < 1 ||
            x.size() > (Eigen::Index(1) << cfg.n_qubits)) {
            throw std::invalid_argument(
                "amplitude encoding of " + std::to_string(x.size()) +
                " features does not fit in " + std::to_string(cfg.n_qubits) +
                " qubits");
        }
    } else if (x.size() != cfg.n_qubits) {
        throw std::invalid_argument(
            to_string(expect) + " encoding needs one feature per qubit: got " +
            std::to_string(x.size()) + " features for " +
            std::to_string(cfg.n_qubits) + " qubits");
    }
}

} // namespace

std::vector<GateOp> encoder_ops(const EncoderConfig& cfg, const Vec& x) {
    std::vector<GateOp> ops;
    const int n = cfg.n_qubits;
    switch (cfg.scheme) {
    case Scheme::ZZ: {
        check_dimension(cfg, x, Scheme::ZZ);
        const auto pairs = entanglement_pairs(cfg.topology, n);
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            for (int q = 0; q < n; ++q) ops.push_back(h_op(q));
            for (int q = 0; q < n; ++q) ops.push_back(p_op(q, 2.0 * x[q]));
            for (const auto& [i, j] : pairs) {
                ops.push_back(cnot_op(i, j));
                ops.push_back(p_op(j, 2.0 * x[i] * x[j]));
                ops.push_back(cnot_op(i, j));
            }
        }
        break;
    }
    case Scheme::Angle: {
        check_dimension(cfg, x, Scheme::Angle);
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            for (int q = 0; q < n; ++q) {
                ops.push_back(rot_op(q, cfg.rotation_axis, x[q]));
            }
        }
        break;
    }
    case Scheme::Amplitude:
        throw std::invalid_argument(
            "amplitude encoding has no gate realization");
    }
    return ops;
}

StateVector encode_zz(const Vec& x, const EncoderConfig& cfg) {
    StateVector state = zero_state(cfg.n_qubits);
    apply_ops(state, encoder_ops(cfg, x));
    return state;
}

StateVector encode_angle(const Vec& x, const EncoderConfig& cfg) {
    StateVector state = zero_state(cfg.n_qubits);
    apply_ops(state, encoder_ops(cfg, x));
    return state;
}

StateVector encode_amplitude(const Vec& x, const EncoderConfig& cfg) {
    check_dimension(cfg, x, Scheme::Amplitude);
    const double norm = x.norm();
    if (norm == 0.0) {
        throw std::invalid_argument(
            "amplitude encoding needs a nonzero feature vector");
    }
    StateVector state = zero_state(cfg.n_qubits);
    state.amplitudes.setZero();
    state.amplitudes.head(x.size()) = (x / norm).cast<Complex>();
    return state;
}

StateVector encode(const Vec& x, const EncoderConfig& cfg) {
    switch (cfg.scheme) {
    case Scheme::ZZ: return encode_zz(x, cfg);
    case Scheme::Angle: return encode_angle(x, cfg);
    case Scheme::Amplitude: return encode_amplitude(x, cfg);
    }
    throw std::invalid_argument("unknown encoding scheme");
}

} // namespace vqclab
