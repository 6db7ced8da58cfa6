#include "vqclab/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vqclab {

ConfusionMatrix confusion(const std::vector<int>& preds,
                          const std::vector<int>& truth) {
    if (preds.size() != truth.size()) {
        throw std::invalid_argument(
            "prediction/truth length mismatch: " +
            std::to_string(preds.size()) + " vs " +
            std::to_string(truth.size()));
    }
    if (preds.empty()) {
        throw std::invalid_argument("cannot build a confusion matrix from "
                                    "zero samples");
    }
    ConfusionMatrix cm;
    for (size_t i = 0; i < preds.size(); ++i) {
        const int p = preds[i];
        const int t = truth[i];
        if ((p != 0 && p != 1) || (t != 0 && t != 1)) {
            throw std::invalid_argument("labels must be 0 or 1 (sample " +
                                        std::to_string(i) + ")");
        }
        if (t == 0) {
            p == 0 ? ++cm.tn : ++cm.fp;
        } else {
            p == 1 ? ++cm.tp : ++cm.fn;
        }
    }
    return cm;
}

namespace {

// num/den with the 0/0 -> 0 rule; marks the panel degenerate when it fires.
double ratio(double num, double den, bool& degenerate) {
    if (den == 0.0) {
        degenerate = true;
        return 0.0;
    }
    return num / den;
}

} // namespace

MetricPanel panel(const ConfusionMatrix& cm) {
    if (cm.total() < 1) {
        throw std::invalid_argument("empty confusion matrix");
    }
    if (cm.tn < 0 || cm.fp < 0 || cm.fn < 0 || cm.tp < 0) {
        throw std::invalid_argument("confusion counts must be nonnegative");
    }
    const double tn = static_cast<double>(cm.tn);
    const double fp = static_cast<double>(cm.fp);
    const double fn = static_cast<double>(cm.fn);
    const double tp = static_cast<double>(cm.tp);
    MetricPanel m;
    m.accuracy = (tn + tp) / static_cast<double>(cm.total());
    m.precision = ratio(tp, tp + fp, m.degenerate);
    m.recall = ratio(tp, tp + fn, m.degenerate);
    m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall,
                 m.degenerate);
    const double mcc_den =
        std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
    m.mcc = ratio(tp * tn - fp * fn, mcc_den, m.degenerate);
    m.fpr = ratio(fp, fp + tn, m.degenerate);
    return m;
}

std::vector<RunDelta> compare_runs(const std::vector<RunAccuracy>& runs,
                                   const std::string& baseline) {
    const RunAccuracy* base = nullptr;
    for (const RunAccuracy& r : runs) {
        if (r.name == baseline) {
            base = &r;
            break;
        }
    }
    if (!base) {
        throw std::invalid_argument("baseline run '" + baseline +
                                    "' not found in results");
    }
    std::vector<RunDelta> table;
    table.reserve(runs.size());
    for (const RunAccuracy& r : runs) {
        RunDelta d;
        d.name = r.name;
        d.test_delta_pp = (r.test_acc - base->test_acc) * 100.0;
        d.val_delta_pp = (r.val_acc - base->val_acc) * 100.0;
        d.train_val_gap_pp = (r.train_acc - r.val_acc) * 100.0;
        d.test_delta_rel = base->test_acc != 0.0
                               ? (r.test_acc - base->test_acc) /
                                     base->test_acc * 100.0
                               : 0.0;
        table.push_back(d);
    }
    return table;
}

void export_curves(const std::vector<EpochStats>& history,
                   const std::string& path) {
    if (history.empty()) {
        throw std::invalid_argument("cannot export an empty history");
    }
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    std::fputs("epoch,train_loss,train_acc,val_loss,val_acc\n", f);
    for (size_t e = 0; e < history.size(); ++e) {
        const EpochStats& s = history[e];
        std::fprintf(f, "%zu,%.17g,%.17g,%.17g,%.17g\n", e + 1, s.train_loss,
                     s.train_acc, s.val_loss, s.val_acc);
    }
    if (std::fclose(f) != 0) {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

} // namespace vqclab
