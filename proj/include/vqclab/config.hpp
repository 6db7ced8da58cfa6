// Experiment configuration: strict line-oriented `key = value` files with
// dotted section keys (`ansatz.layers = 2`, `# comment`). Unknown keys and
// malformed values are rejected with the offending key named.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqclab/common.hpp"
#include "vqclab/dataprep.hpp"
#include "vqclab/vqc.hpp"

namespace vqclab {

struct ExperimentConfig {
    // data
    std::string data_source = "synthetic"; // or "csv"
    std::string csv_path;
    std::string label_column = "label";
    int legit = 1600;
    int fraud = 800;
    int features = 8; // raw feature count for the generator
    Difficulty difficulty = Difficulty::Medium;
    // splits
    double train_fraction = 0.7;
    double val_fraction = 0.2; // of the training split
    // feature scaling: upper end of the min-max target range. pi keeps
    // single-qubit phases within one turn; pairwise product phases in the
    // zz encoder need ~1 to stay inside a turn as well (see README).
    double scale_max = kPi;
    // feature selection
    bool select_enabled = true;
    int select_k = 4;
    RfParams rf; // seed filled from the master seed at run time
    // circuit
    Scheme scheme = Scheme::ZZ;
    int repetitions = 0; // 0 = per-scheme default (2 for zz, else 1)
    Axis rotation_axis = Axis::Y;
    bool compact_amplitude = false;
    Topology topology = Topology::Circular; // drives ZZ pairs and ansatz
    int layers = 2;
    int readout_qubit = 0;
    LogitMode logit_mode = LogitMode::ZExpectation;
    double logit_scale = 4.0;
    // training
    TrainConfig train;
    // run
    uint64_t seed = 42;
    std::string output_dir = "runs";
    std::string grid_baseline = "zz+circular";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Cross-field checks (fraction ranges, layer bounds, file existence for
// csv sources). parse_* call this; exposed for configs built in code.
void validate_config(const ExperimentConfig& cfg);

// The effective encoder repetition count (resolves the 0 = default rule).
int effective_repetitions(const ExperimentConfig& cfg);

} // namespace vqclab
