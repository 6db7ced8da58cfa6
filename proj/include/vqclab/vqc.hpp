// The classifier: encode -> ansatz -> readout probability p0, logistic
// cross-entropy on a logit derived from p0, exact parameter-shift
// gradients, Adam, the training loop, and validation threshold tuning.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqclab/ansatz.hpp"
#include "vqclab/common.hpp"
#include "vqclab/featuremaps.hpp"
#include "vqclab/metrics.hpp"

namespace vqclab {

// RawP0 feeds p0 straight into the sigmoid (compresses predictions into
// [0.5, 0.731]); ZExpectation (default) uses z = scale * (2*p0 - 1), i.e.
// a scaled readout-qubit Z expectation, which spans confident outputs on
// both sides.
enum class LogitMode { RawP0, ZExpectation };

std::string to_string(LogitMode m);
LogitMode logit_mode_from_string(const std::string& name);

struct VqcConfig {
    EncoderConfig encoder;
    AnsatzTemplate ansatz;
    int readout_qubit = 0;
    LogitMode logit_mode = LogitMode::ZExpectation;
    double logit_scale = 4.0;
    double threshold = 0.5; // p0 cutoff; tuned on validation after training
};

struct TrainConfig {
    int epochs = 100;
    int batch_size = 32;
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    uint64_t seed = 0;
    double shift = kPi / 2; // parameter-shift evaluation offset
};

struct TrainedModel {
    Vec theta;
    double threshold = 0.5;
    VqcConfig config;
    TrainConfig train_config;
    std::vector<EpochStats> history; // one entry per epoch
};

// p0 = prob_zero(ansatz(encode(x)), readout_qubit).
double forward(const Vec& x, const Vec& theta, const VqcConfig& cfg);

std::vector<double> forward_all(const Mat& X, const Vec& theta,
                                const VqcConfig& cfg);

// 1 iff p0 >= tau (boundary inclusive).
int classify(double p0, double tau);

double logit_from_p0(double p0, const VqcConfig& cfg);

// -[y ln s + (1-y) ln(1-s)], s = sigmoid(z) clamped to
// [1e-12, 1 - 1e-12] before the logs.
double logistic_loss(double z, int y);

// Mean logistic loss over the batch, summed in sample order.
double batch_loss(const Vec& theta, const Mat& X, const std::vector<int>& y,
                  const VqcConfig& cfg);

// Exact loss gradient: parameter-shift for dp0/dtheta_k (two circuit
// evaluations per parameter per sample), chain rule through the logit and
// sigmoid. Encoded states are computed once per sample and reused.
Vec grad_parameter_shift(const Vec& theta, const Mat& X,
                         const std::vector<int>& y, const VqcConfig& cfg,
                         double shift = kPi / 2);

struct AdamState {
    Vec m; // first-moment estimate
    Vec v; // second-moment estimate
    long t = 0;
};

void adam_step(AdamState& opt, Vec& theta, const Vec& grad,
               const TrainConfig& tcfg);

// Seeded init uniform(-pi/10, pi/10), seeded epoch shuffles, mini-batch
// Adam, per-epoch history on both splits. Non-finite loss aborts with
// DivergenceError. Bitwise deterministic in (seed, config).
TrainedModel train(const Mat& x_train, const std::vector<int>& y_train,
                   const Mat& x_val, const std::vector<int>& y_val,
                   const VqcConfig& vcfg, const TrainConfig& tcfg);

// F1-maximizing threshold over the grid {0.05, 0.06, ..., 0.95}; ties go
// to the smaller threshold (recall-friendly). Needs both classes present.
double tune_threshold(const std::vector<double>& p0_values,
                      const std::vector<int>& labels);

} // namespace vqclab
