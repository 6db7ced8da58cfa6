#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace vqclab {

using Scalar  = double;
using Complex = std::complex<double>;
using Vec     = Eigen::VectorXd;
using Mat     = Eigen::MatrixXd;
using CVec    = Eigen::VectorXcd;
using CMat    = Eigen::MatrixXcd;

// 2x2 unitary acting on a single qubit.
using Gate1Q = Eigen::Matrix2cd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// User-facing configuration problems: bad flags, bad config keys, bad presets.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files; the message names the offending row where known.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Training produced a non-finite loss.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vqclab
