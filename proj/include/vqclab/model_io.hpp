// Model persistence. Every real number is stored as a C99 hex-float
// string ("%a"), so a save/load cycle reproduces doubles bit for bit.
#pragma once

#include <string>
#include <vector>

#include "vqclab/dataprep.hpp"
#include "vqclab/vqc.hpp"

namespace vqclab {

struct ModelFile {
    TrainedModel model; // theta, tuned threshold, config snapshot
    ScalerState scaler;
    std::vector<int> selected_features; // column indices into the raw data
    std::vector<std::string> feature_names; // names of the selected columns
};

void save_model(const ModelFile& mf, const std::string& path);
ModelFile load_model(const std::string& path);

// %a / strtod round-trip helpers, shared with tests.
std::string double_to_hex(double v);
double hex_to_double(const std::string& s);

} // namespace vqclab
