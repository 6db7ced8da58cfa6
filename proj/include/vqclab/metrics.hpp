// Binary-classification metrics. Convention throughout: positive class =
// fraud = label 1.
#pragma once

#include <string>
#include <vector>

#include "vqclab/common.hpp"

namespace vqclab {

struct ConfusionMatrix {
    long tn = 0;
    long fp = 0;
    long fn = 0;
    long tp = 0;
    long total() const { return tn + fp + fn + tp; }
};

ConfusionMatrix confusion(const std::vector<int>& preds,
                          const std::vector<int>& truth);

// Any 0/0 ratio is reported as 0 and flips `degenerate` — collapsed
// configurations must yield a row in grid tables, not an abort.
struct MetricPanel {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double mcc = 0.0;
    double fpr = 0.0;
    bool degenerate = false;
};

MetricPanel panel(const ConfusionMatrix& cm);

struct EpochStats {
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_loss = 0.0;
    double val_acc = 0.0;
};

// Accuracies as fractions in [0,1].
struct RunAccuracy {
    std::string name;
    double train_acc = 0.0;
    double val_acc = 0.0;
    double test_acc = 0.0;
};

// Deltas vs the baseline run in percentage points; relative delta in
// percent of the baseline. train_val_gap is the run's own gap.
struct RunDelta {
    std::string name;
    double test_delta_pp = 0.0;
    double val_delta_pp = 0.0;
    double train_val_gap_pp = 0.0;
    double test_delta_rel = 0.0;
};

std::vector<RunDelta> compare_runs(const std::vector<RunAccuracy>& runs,
                                   const std::string& baseline);

// CSV columns epoch,train_loss,train_acc,val_loss,val_acc; one row per
// epoch; %.17g values so a reparse reproduces every double bitwise.
void export_curves(const std::vector<EpochStats>& history,
                   const std::string& path);

} // namespace vqclab
