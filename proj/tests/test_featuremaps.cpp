#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "vqclab/featuremaps.hpp"
#include "vqclab/rng.hpp"

using namespace vqclab;

namespace {

EncoderConfig zz_cfg(int n, Topology t, int reps) {
    EncoderConfig cfg;
    cfg.scheme = Scheme::ZZ;
    cfg.topology = t;
    cfg.repetitions = reps;
    cfg.n_qubits = n;
    return cfg;
}

EncoderConfig angle_cfg(int n, Axis axis = Axis::Y, int reps = 1) {
    EncoderConfig cfg;
    cfg.scheme = Scheme::Angle;
    cfg.rotation_axis = axis;
    cfg.repetitions = reps;
    cfg.n_qubits = n;
    return cfg;
}

EncoderConfig amp_cfg(int n) {
    EncoderConfig cfg;
    cfg.scheme = Scheme::Amplitude;
    cfg.n_qubits = n;
    return cfg;
}

} // namespace

TEST_CASE("scheme names round-trip") {
    CHECK(to_string(Scheme::ZZ) == "zz");
    CHECK(to_string(Scheme::Amplitude) == "amplitude");
    CHECK(scheme_from_string("angle") == Scheme::Angle);
    CHECK_THROWS_AS(scheme_from_string("basis"), ConfigError);
}

TEST_CASE("default encoder repeats the pairwise scheme twice") {
    CHECK(default_encoder(Scheme::ZZ, Topology::Circular, 4).repetitions == 2);
    CHECK(default_encoder(Scheme::Angle, Topology::Linear, 4).repetitions == 1);
    CHECK(default_encoder(Scheme::Amplitude, Topology::Full, 3).repetitions ==
          1);
}

TEST_CASE("required qubit counts per scheme") {
    CHECK(required_qubits(Scheme::ZZ, 5, false) == 5);
    CHECK(required_qubits(Scheme::Angle, 8, false) == 8);
    CHECK(required_qubits(Scheme::Amplitude, 4, false) == 4);
    CHECK(required_qubits(Scheme::Amplitude, 4, true) == 2);
    CHECK(required_qubits(Scheme::Amplitude, 5, true) == 3);
    CHECK(required_qubits(Scheme::Amplitude, 1, true) == 1);
    CHECK_THROWS_AS(required_qubits(Scheme::ZZ, 0, false), ConfigError);
}

TEST_CASE("zero input collapses the pairwise encoding to plain hadamards") {
    const StateVector s =
        encode_zz(Vec::Zero(4), zz_cfg(4, Topology::Circular, 1));
    REQUIRE(s.amplitudes.size() == 16);
    for (Eigen::Index k = 0; k < 16; ++k) {
        CHECK(std::abs(s.amplitudes[k] - Complex(0.25, 0)) < 1e-14);
    }
}

TEST_CASE("pairwise encoding matches the diagonal closed form") {
    Rng rng(404);
    for (const Topology t :
         {Topology::Linear, Topology::Circular, Topology::Full}) {
        for (int n = 2; n <= 4; ++n) {
            for (int rep = 0; rep < 5; ++rep) {
                Vec x(n);
                for (int i = 0; i < n; ++i) {
                    x[i] = rng.uniform(0.0, kPi);
                }
                const StateVector s = encode_zz(x, zz_cfg(n, t, 1));
                const oracle::CVec ref = oracle::zz_closed_form(
                    x, entanglement_pairs(t, n), n);
                // Equality is up to a global phase, so compare by fidelity.
                CHECK(oracle::fidelity_dense(ref, s.amplitudes) >
                      1.0 - 1e-12);
            }
        }
    }
}

TEST_CASE("pairwise phases vanish when at most one feature is nonzero") {
    Vec x = Vec::Zero(4);
    x[2] = 1.3;
    StateVector lin = encode_zz(x, zz_cfg(4, Topology::Linear, 2));
    const StateVector full = encode_zz(x, zz_cfg(4, Topology::Full, 2));
    CHECK(fidelity(lin, full) > 1.0 - 1e-12);
}

TEST_CASE("pairwise gate realization has the expected cnot budget") {
    const Vec x = Vec::Constant(4, 0.5);
    auto count_cnots = [](const std::vector<GateOp>& ops) {
        int c = 0;
        for (const auto& op : ops) {
            c += op.kind == OpKind::Cnot ? 1 : 0;
        }
        return c;
    };
    CHECK(count_cnots(encoder_ops(zz_cfg(4, Topology::Linear, 1), x)) == 6);
    CHECK(count_cnots(encoder_ops(zz_cfg(4, Topology::Circular, 1), x)) == 8);
    CHECK(count_cnots(encoder_ops(zz_cfg(4, Topology::Full, 1), x)) == 12);
    CHECK(count_cnots(encoder_ops(zz_cfg(4, Topology::Linear, 2), x)) == 12);
}

TEST_CASE("per-qubit rotations realize the product closed form") {
    SUBCASE("all-zero features leave the ground state") {
        const StateVector s = encode_angle(Vec::Zero(3), angle_cfg(3));
        CHECK(std::abs(s.amplitudes[0] - Complex(1, 0)) < 1e-14);
    }
    SUBCASE("pi rotations reach the all-ones state") {
        const StateVector s =
            encode_angle(Vec::Constant(3, kPi), angle_cfg(3));
        CHECK(std::abs(s.amplitudes[7]) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("half-pi on one qubit gives the real uniform pair") {
        const StateVector s =
            encode_angle(Vec::Constant(1, kPi / 2), angle_cfg(1));
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(s.amplitudes[0] - Complex(r, 0)) < 1e-14);
        CHECK(std::abs(s.amplitudes[1] - Complex(r, 0)) < 1e-14);
    }
    SUBCASE("random features, all axes, against the kron oracle") {
        Rng rng(77);
        for (const Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
            for (int reps = 1; reps <= 2; ++reps) {
                Vec x(3);
                for (int i = 0; i < 3; ++i) {
                    x[i] = rng.uniform(0.0, kPi);
                }
                const StateVector s =
                    encode_angle(x, angle_cfg(3, axis, reps));
                const oracle::CVec ref =
                    oracle::angle_closed_form(x, axis, reps, 3);
                CHECK((s.amplitudes - ref).norm() < 1e-12);
            }
        }
    }
}

TEST_CASE("each qubit marginal depends only on its own feature") {
    Vec a(3), b(3);
    a << 0.4, 1.1, 2.0;
    b << 0.4, 2.9, 0.3; // same first feature, different rest
    const StateVector sa = encode_angle(a, angle_cfg(3));
    const StateVector sb = encode_angle(b, angle_cfg(3));
    CHECK(prob_zero(sa, 0) == doctest::Approx(prob_zero(sb, 0)).epsilon(1e-12));
    CHECK(prob_zero(sa, 0) ==
          doctest::Approx(std::cos(0.2) * std::cos(0.2)).epsilon(1e-12));
}

TEST_CASE("amplitude encoding writes the normalized vector") {
    SUBCASE("unit basis vector") {
        Vec x(4);
        x << 1, 0, 0, 0;
        const StateVector s = encode_amplitude(x, amp_cfg(2));
        CHECK(std::abs(s.amplitudes[0] - Complex(1, 0)) < 1e-15);
    }
    SUBCASE("3-4-5 triangle") {
        Vec x(2);
        x << 3, 4;
        const StateVector s = encode_amplitude(x, amp_cfg(1));
        CHECK(std::abs(s.amplitudes[0] - Complex(0.6, 0)) < 1e-15);
        CHECK(std::abs(s.amplitudes[1] - Complex(0.8, 0)) < 1e-15);
    }
    SUBCASE("shorter inputs are zero padded") {
        Vec x(3);
        x << 1, 1, 1;
        const StateVector s = encode_amplitude(x, amp_cfg(2));
        CHECK(std::abs(s.amplitudes[3]) == 0.0);
        CHECK(state_norm(s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("scaling the input leaves the state unchanged") {
        Vec x(4);
        x << 0.2, 1.7, 0.9, 2.4;
        const StateVector a = encode_amplitude(x, amp_cfg(2));
        const StateVector b = encode_amplitude(Vec(7.0 * x), amp_cfg(2));
        CHECK((a.amplitudes - b.amplitudes).norm() < 1e-14);
    }
    SUBCASE("the zero vector cannot be normalized") {
        CHECK_THROWS_AS(encode_amplitude(Vec::Zero(4), amp_cfg(2)),
                        std::invalid_argument);
    }
    SUBCASE("no gate realization exists") {
        CHECK_THROWS_AS(encoder_ops(amp_cfg(2), Vec::Ones(4)),
                        std::invalid_argument);
    }
}

TEST_CASE("every encoding yields a normalized state") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        Vec x(4);
        for (int i = 0; i < 4; ++i) {
            x[i] = rng.uniform(0.0, kPi);
        }
        CHECK(std::abs(state_norm(encode(
                  x, zz_cfg(4, Topology::Circular, 2))) - 1.0) < 1e-12);
        CHECK(std::abs(state_norm(encode(x, angle_cfg(4))) - 1.0) < 1e-12);
        CHECK(std::abs(state_norm(encode(x, amp_cfg(4))) - 1.0) < 1e-12);
    }
}

TEST_CASE("feature dimension must match the configuration") {
    CHECK_THROWS_AS(encode_zz(Vec::Ones(3), zz_cfg(4, Topology::Linear, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(encode_angle(Vec::Ones(5), angle_cfg(4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(encode_amplitude(Vec::Ones(9), amp_cfg(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(encode_zz(Vec::Ones(4), zz_cfg(4, Topology::Linear, 0)),
                    ConfigError);
}
