// Data plumbing: synthetic fraud-style generator, CSV in/out, min-max
// scaling to [0, pi], stratified splitting, and random-forest feature
// importance for top-k selection.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vqclab/common.hpp"

namespace vqclab {

struct Dataset {
    Mat features; // N x d, raw units
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    Eigen::Index size() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }
};

enum class Difficulty { Easy, Medium, Hard };

std::string to_string(Difficulty d);
Difficulty difficulty_from_string(const std::string& name);

// Two seeded Gaussian classes in d_raw dimensions. The first d_raw-2
// features are informative: class 0 is N(0,1); class 1 sits at distance
// `separation` (3.0 / 1.5 / 0.75 by difficulty) with alternating sign and
// a tighter spread, mimicking a compact fraud cluster. The last 2 features
// are N(0,1) noise in both classes, there to exercise feature selection.
// Legit rows come first, then fraud rows.
Dataset generate_synthetic(int n_legit, int n_fraud, int d_raw,
                           Difficulty difficulty, uint64_t seed);

// Strict numeric CSV with a header row; `label_column` must hold only 0/1.
// Malformed numbers, missing values and bad labels name the 1-based file
// line in the error.
Dataset load_csv(const std::string& path,
                 const std::string& label_column = "label");

void write_csv(const Dataset& ds, const std::string& path);

struct ScalerState {
    Vec feat_min; // per-feature raw minima (from the training split)
    Vec feat_max;
    double scale_max = kPi; // upper end of the target range
};

ScalerState fit_scaler(const Mat& train_features, double scale_max = kPi);

// x' = scale_max * (x - min) / (max - min), clamped to [0, scale_max];
// constant features map to 0. The default range is [0, pi].
Mat apply_scaler(const ScalerState& scaler, const Mat& features);

// Fits on `train` only, applies to both. Returns (scaled train, scaled
// other).
std::pair<Mat, Mat> fit_apply_scaler(const Mat& train, const Mat& other,
                                     double scale_max = kPi);

// Per-class seeded shuffle, first floor(fraction * class_count) of each
// class into train. Returned index lists are sorted ascending.
std::pair<std::vector<int>, std::vector<int>>
stratified_split_indices(const std::vector<int>& labels,
                         double train_fraction, uint64_t seed);

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds,
                                             double train_fraction,
                                             uint64_t seed);

Dataset subset_rows(const Dataset& ds, const std::vector<int>& rows);
Dataset select_columns(const Dataset& ds, const std::vector<int>& cols);

struct RfParams {
    int n_trees = 100;
    int max_depth = 8;
    int min_samples_split = 4;
    uint64_t seed = 0;
};

// Mean Gini-impurity decrease per feature across a seeded bootstrap
// forest, normalized to sum 1. Invariant to label-preserving row shuffles
// and equivariant under feature-column permutation: all sampling is keyed
// on row/column content, not on input order (see rforest.cpp).
Vec rf_importance(const Dataset& ds, const RfParams& params);

// Indices of the k largest scores, descending; ties toward lower index.
std::vector<int> select_top_k(const Vec& scores, int k);

} // namespace vqclab
