// End-to-end experiment runs: data preparation (generate/load, split,
// select, scale), single training runs, and the scheme x topology grid
// with per-cell failure isolation.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqclab/config.hpp"
#include "vqclab/dataprep.hpp"
#include "vqclab/metrics.hpp"
#include "vqclab/model_io.hpp"
#include "vqclab/vqc.hpp"

namespace vqclab {

// Model-ready splits. All feature matrices are column-selected and scaled
// to [0, pi]; the scaler is fitted on the training rows only (after the
// validation carve-out).
struct PreparedData {
    Mat x_train, x_val, x_test;
    std::vector<int> y_train, y_val, y_test;
    ScalerState scaler;
    std::vector<int> selected; // raw-dataset column indices, model order
    std::vector<std::string> selected_names;
    Vec importance; // over raw columns; empty when selection is off
};

// Everything seeded from cfg.seed alone, so every grid cell sees the same
// data regardless of its own training seed.
PreparedData prepare_data(const ExperimentConfig& cfg);

struct RunResult {
    std::string name;
    bool ok = false;
    std::string error;
    TrainedModel model;
    ConfusionMatrix test_confusion;
    MetricPanel test_metrics;
    double train_acc = 0.0; // at the tuned threshold
    double val_acc = 0.0;
    double test_acc = 0.0;
    std::string model_path, report_path, curves_path;
};

// "zz+circular" etc.; doubles as the grid baseline key.
std::string cell_name(Scheme scheme, Topology topology);

// Trains one (scheme, topology) cell on prepared data and writes
// model/report/curves files under out_dir. Throws on failure; the grid
// wraps it, cmd_train lets it propagate.
RunResult run_cell(const PreparedData& data, const ExperimentConfig& cfg,
                   Scheme scheme, Topology topology, uint64_t train_seed,
                   const std::string& out_dir);

// Single run of the configured scheme/topology. The training seed is
// mix(master seed, hash(cell name)) — identical to what the full grid
// would use for the same cell.
RunResult run_training(const ExperimentConfig& cfg,
                       const std::string& out_dir);

struct GridOutcome {
    std::vector<RunResult> cells; // fixed scheme-major order
    std::string comparison_path;
};

// Runs every scheme x topology combination (optionally restricted),
// sharing one prepared dataset. Failing cells are recorded in the
// comparison table, never abort the grid. Worker count never changes any
// output byte.
GridOutcome run_grid(const ExperimentConfig& cfg, const std::string& out_dir,
                     int jobs, const std::vector<Scheme>& schemes,
                     const std::vector<Topology>& topologies);

} // namespace vqclab
