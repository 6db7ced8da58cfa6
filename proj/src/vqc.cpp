#include "vqclab/vqc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vqclab/rng.hpp"

namespace vqclab {

std::string to_string(LogitMode m) {
    switch (m) {
    case LogitMode::RawP0: return "raw_p0";
    case LogitMode::ZExpectation: return "z_expectation";
    }
    return "?";
}

LogitMode logit_mode_from_string(const std::string& name) {
    if (name == "raw_p0") return LogitMode::RawP0;
    if (name == "z_expectation") return LogitMode::ZExpectation;
    throw ConfigError("unknown logit mode '" + name +
                      "' (expected raw_p0 or z_expectation)");
}

namespace {

void check_config(const VqcConfig& cfg) {
    if (cfg.encoder.n_qubits != cfg.ansatz.n_qubits) {
        throw std::invalid_argument(
            "encoder (" + std::to_string(cfg.encoder.n_qubits) +
            " qubits) and ansatz (" + std::to_string(cfg.ansatz.n_qubits) +
            " qubits) disagree");
    }
    if (cfg.readout_qubit < 0 || cfg.readout_qubit >= cfg.ansatz.n_qubits) {
        throw std::invalid_argument("readout qubit " +
                                    std::to_string(cfg.readout_qubit) +
                                    " out of range");
    }
    if (!(cfg.logit_scale > 0.0)) {
        throw std::invalid_argument("logit scale must be > 0");
    }
    if (cfg.threshold < 0.0 || cfg.threshold > 1.0) {
        throw std::invalid_argument("threshold must lie in [0, 1]");
    }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

constexpr double kSigmoidClamp = 1e-12;

void check_batch(const Mat& X, const std::vector<int>& y) {
    if (X.rows() == 0) {
        throw std::invalid_argument("empty batch");
    }
    if (static_cast<size_t>(X.rows()) != y.size()) {
        throw std::invalid_argument("batch has " + std::to_string(X.rows()) +
                                    " rows but " + std::to_string(y.size()) +
                                    " labels");
    }
    for (const int label : y) {
        if (label != 0 && label != 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
    }
}

} // namespace

double forward(const Vec& x, const Vec& theta, const VqcConfig& cfg) {
    check_config(cfg);
    StateVector state = encode(x, cfg.encoder);
    apply_ansatz(state, cfg.ansatz, theta);
    return prob_zero(state, cfg.readout_qubit);
}

std::vector<double> forward_all(const Mat& X, const Vec& theta,
                                const VqcConfig& cfg) {
    std::vector<double> out(static_cast<size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        out[static_cast<size_t>(i)] = forward(X.row(i), theta, cfg);
    }
    return out;
}

int classify(double p0, double tau) {
    if (p0 < 0.0 || p0 > 1.0 || tau < 0.0 || tau > 1.0) {
        throw std::invalid_argument(
            "classify expects probabilities in [0, 1]");
    }
    return p0 >= tau ? 1 : 0;
}

double logit_from_p0(double p0, const VqcConfig& cfg) {
    switch (cfg.logit_mode) {
    case LogitMode::RawP0: return p0;
    case LogitMode::ZExpectation: return cfg.logit_scale * (2.0 * p0 - 1.0);
    }
    throw std::invalid_argument("unknown logit mode");
}

double logistic_loss(double z, int y) {
    const double s = std::clamp(sigmoid(z), kSigmoidClamp,
                                1.0 - kSigmoidClamp);
    return y == 1 ? -std::log(s) : -std::log(1.0 - s);
}

double batch_loss(const Vec& theta, const Mat& X, const std::vector<int>& y,
                  const VqcConfig& cfg) {
    check_batch(X, y);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double z = logit_from_p0(forward(X.row(i), theta, cfg), cfg);
        sum += logistic_loss(z, y[static_cast<size_t>(i)]);
    }
    return sum / static_cast<double>(X.rows());
}

Vec grad_parameter_shift(const Vec& theta, const Mat& X,
                         const std::vector<int>& y, const VqcConfig& cfg,
                         double shift) {
    check_config(cfg);
    check_batch(X, y);
    if (theta.size() != cfg.ansatz.parameter_count) {
        throw std::invalid_argument("parameter vector has " +
                                    std::to_string(theta.size()) +
                                    " entries, ansatz expects " +
                                    std::to_string(
                                        cfg.ansatz.parameter_count));
    }
    const double denom = 2.0 * std::sin(shift);
    if (std::abs(denom) < 1e-9) {
        throw std::invalid_argument("parameter-shift offset must not be a "
                                    "multiple of pi");
    }
    const auto n = X.rows();

    // Encoding does not depend on theta: encode each sample once.
    std::vector<StateVector> encoded;
    encoded.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        encoded.push_back(encode(X.row(i), cfg.encoder));
    }

    // dL/dz_i / n, the per-sample chain-rule weight down to the logit.
    // (sigma - y) is the exact cross-entropy derivative; the clamp only
    // engages where that derivative is itself ~1e-12.
    std::vector<double> weight(static_cast<size_t>(n));
    const double dz_dp0 =
        cfg.logit_mode == LogitMode::RawP0 ? 1.0 : 2.0 * cfg.logit_scale;
    for (Eigen::Index i = 0; i < n; ++i) {
        StateVector state = encoded[static_cast<size_t>(i)];
        apply_ansatz(state, cfg.ansatz, theta);
        const double p0 = prob_zero(state, cfg.readout_qubit);
        const double z = logit_from_p0(p0, cfg);
        weight[static_cast<size_t>(i)] =
            (sigmoid(z) - static_cast<double>(y[static_cast<size_t>(i)])) *
            dz_dp0 / static_cast<double>(n);
    }

    Vec grad = Vec::Zero(theta.size());
    Vec shifted = theta;
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            shifted[k] = theta[k] + shift;
            StateVector plus = encoded[static_cast<size_t>(i)];
            apply_ansatz(plus, cfg.ansatz, shifted);
            const double p_plus = prob_zero(plus, cfg.readout_qubit);

            shifted[k] = theta[k] - shift;
            StateVector minus = encoded[static_cast<size_t>(i)];
            apply_ansatz(minus, cfg.ansatz, shifted);
            const double p_minus = prob_zero(minus, cfg.readout_qubit);

            acc += weight[static_cast<size_t>(i)] * (p_plus - p_minus) /
                   denom;
        }
        shifted[k] = theta[k];
        grad[k] = acc;
    }
    return grad;
}

void adam_step(AdamState& opt, Vec& theta, const Vec& grad,
               const TrainConfig& tcfg) {
    if (opt.m.size() == 0) {
        opt.m = Vec::Zero(theta.size());
        opt.v = Vec::Zero(theta.size());
    }
    if (opt.m.size() != theta.size() || grad.size() != theta.size()) {
        throw std::invalid_argument("optimizer/parameter shape mismatch");
    }
    ++opt.t;
    opt.m = tcfg.beta1 * opt.m + (1.0 - tcfg.beta1) * grad;
    opt.v = tcfg.beta2 * opt.v +
            (1.0 - tcfg.beta2) * grad.cwiseProduct(grad);
    const double bias1 =
        1.0 - std::pow(tcfg.beta1, static_cast<double>(opt.t));
    const double bias2 =
        1.0 - std::pow(tcfg.beta2, static_cast<double>(opt.t));
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
        const double m_hat = opt.m[k] / bias1;
        const double v_hat = opt.v[k] / bias2;
        theta[k] -= tcfg.learning_rate * m_hat /
                    (std::sqrt(v_hat) + tcfg.epsilon);
    }
}

namespace {

void check_train_config(const TrainConfig& tcfg) {
    if (tcfg.epochs < 1) {
        throw ConfigError("epochs must be >= 1, got " +
                          std::to_string(tcfg.epochs));
    }
    if (tcfg.batch_size < 1) {
        throw ConfigError("batch size must be >= 1, got " +
                          std::to_string(tcfg.batch_size));
    }
    if (!(tcfg.learning_rate > 0.0 && tcfg.learning_rate < 1.0)) {
        throw ConfigError("learning rate must lie in (0, 1), got " +
                          std::to_string(tcfg.learning_rate));
    }
}

double accuracy_of(const std::vector<double>& p0s,
                   const std::vector<int>& y, double tau) {
    long hits = 0;
    for (size_t i = 0; i < p0s.size(); ++i) {
        hits += classify(p0s[i], tau) == y[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(p0s.size());
}

double loss_of(const std::vector<double>& p0s, const std::vector<int>& y,
               const VqcConfig& cfg) {
    double sum = 0.0;
    for (size_t i = 0; i < p0s.size(); ++i) {
        sum += logistic_loss(logit_from_p0(p0s[i], cfg), y[i]);
    }
    return sum / static_cast<double>(p0s.size());
}

} // namespace

TrainedModel train(const Mat& x_train, const std::vector<int>& y_train,
                   const Mat& x_val, const std::vector<int>& y_val,
                   const VqcConfig& vcfg, const TrainConfig& tcfg) {
    check_config(vcfg);
    check_batch(x_train, y_train);
    check_batch(x_val, y_val);
    check_train_config(tcfg);

    const int n_params = vcfg.ansatz.parameter_count;
    Rng init_rng(derive_seed(tcfg.seed, "theta-init"));
    Vec theta(n_params);
    for (int k = 0; k < n_params; ++k) {
        theta[k] = init_rng.uniform(-kPi / 10.0, kPi / 10.0);
    }

    Rng shuffle_rng(derive_seed(tcfg.seed, "epoch-shuffle"));
    const auto n = x_train.rows();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    AdamState opt;
    TrainedModel model;
    model.config = vcfg;
    model.train_config = tcfg;
    model.history.reserve(static_cast<size_t>(tcfg.epochs));

    Mat batch_x;
    std::vector<int> batch_y;
    for (int epoch = 1; epoch <= tcfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (Eigen::Index start = 0; start < n; start += tcfg.batch_size) {
            const Eigen::Index stop =
                std::min<Eigen::Index>(start + tcfg.batch_size, n);
            batch_x.resize(stop - start, x_train.cols());
            batch_y.clear();
            for (Eigen::Index i = start; i < stop; ++i) {
                const int row = order[static_cast<size_t>(i)];
                batch_x.row(i - start) = x_train.row(row);
                batch_y.push_back(y_train[static_cast<size_t>(row)]);
            }
            const Vec grad = grad_parameter_shift(theta, batch_x, batch_y,
                                                  vcfg, tcfg.shift);
            adam_step(opt, theta, grad, tcfg);
        }

        EpochStats stats;
        const std::vector<double> p_train =
            forward_all(x_train, theta, vcfg);
        const std::vector<double> p_val = forward_all(x_val, theta, vcfg);
        stats.train_loss = loss_of(p_train, y_train, vcfg);
        stats.train_acc = accuracy_of(p_train, y_train, vcfg.threshold);
        stats.val_loss = loss_of(p_val, y_val, vcfg);
        stats.val_acc = accuracy_of(p_val, y_val, vcfg.threshold);
        if (!std::isfinite(stats.train_loss) ||
            !std::isfinite(stats.val_loss)) {
            throw DivergenceError("training loss became non-finite at epoch " +
                                  std::to_string(epoch));
        }
        model.history.push_back(stats);
    }

    model.theta = theta;
    model.threshold = vcfg.threshold;
    return model;
}

double tune_threshold(const std::vector<double>& p0_values,
                      const std::vector<int>& labels) {
    if (p0_values.empty() || p0_values.size() != labels.size()) {
        throw std::invalid_argument(
            "threshold tuning needs matching nonempty value/label lists");
    }
    long positives = 0;
    for (const int y : labels) {
        if (y != 0 && y != 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
        positives += y;
    }
    if (positives == 0 || static_cast<size_t>(positives) == labels.size()) {
        throw std::invalid_argument(
            "threshold tuning needs both classes in the validation split");
    }

    double best_tau = 0.05;
    double best_f1 = -1.0;
    for (int i = 5; i <= 95; ++i) {
        const double tau = static_cast<double>(i) / 100.0;
        long tp = 0, fp = 0, fn = 0;
        for (size_t s = 0; s < p0_values.size(); ++s) {
            const int pred = p0_values[s] >= tau ? 1 : 0;
            if (pred == 1 && labels[s] == 1) ++tp;
            if (pred == 1 && labels[s] == 0) ++fp;
            if (pred == 0 && labels[s] == 1) ++fn;
        }
        const long denom = 2 * tp + fp + fn;
        const double f1 =
            denom == 0 ? 0.0
                       : 2.0 * static_cast<double>(tp) /
                             static_cast<double>(denom);
        if (f1 > best_f1) { // strict: ties keep the smaller threshold
            best_f1 = f1;
            best_tau = tau;
        }
    }
    return best_tau;
}

} // namespace vqclab
