#include "vqclab/pipeline.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "vqclab/log.hpp"
#include "vqclab/rng.hpp"

namespace vqclab {

using json = nlohmann::ordered_json;

PreparedData prepare_data(const ExperimentConfig& cfg) {
    Dataset ds;
    if (cfg.data_source == "csv") {
        ds = load_csv(cfg.csv_path, cfg.label_column);
        log_info("loaded " + std::to_string(ds.size()) + " rows x " +
                 std::to_string(ds.dim()) + " features from " + cfg.csv_path);
    } else {
        ds = generate_synthetic(cfg.legit, cfg.fraud, cfg.features,
                                cfg.difficulty,
                                derive_seed(cfg.seed, "dataset"));
        log_info("generated " + std::to_string(ds.size()) + " samples (" +
                 std::to_string(cfg.legit) + " legit, " +
                 std::to_string(cfg.fraud) + " fraud, " +
                 to_string(cfg.difficulty) + ")");
    }

    auto [trainval, test] = stratified_split(
        ds, cfg.train_fraction, derive_seed(cfg.seed, "train-test-split"));

    PreparedData out;
    const auto d = static_cast<int>(ds.dim());
    if (cfg.select_enabled) {
        if (cfg.select_k > d) {
            throw ConfigError("select.k = " + std::to_string(cfg.select_k) +
                              " exceeds the " + std::to_string(d) +
                              " available features");
        }
        RfParams rf = cfg.rf;
        rf.seed = derive_seed(cfg.seed, "feature-select");
        out.importance = rf_importance(trainval, rf);
        out.selected = select_top_k(out.importance, cfg.select_k);
    } else {
        for (int j = 0; j < d; ++j) {
            out.selected.push_back(j);
        }
    }
    const int k = static_cast<int>(out.selected.size());
    if (k > kMaxQubits) {
        throw ConfigError(
            std::to_string(k) + " model features need more than " +
            std::to_string(kMaxQubits) +
            " qubits; enable feature selection or lower select.k");
    }
    trainval = select_columns(trainval, out.selected);
    test = select_columns(test, out.selected);
    out.selected_names = trainval.feature_names;

    const auto [train_idx, val_idx] = stratified_split_indices(
        trainval.labels, 1.0 - cfg.val_fraction,
        derive_seed(cfg.seed, "val-split"));
    const Dataset train_ds = subset_rows(trainval, train_idx);
    const Dataset val_ds = subset_rows(trainval, val_idx);

    out.scaler = fit_scaler(train_ds.features, cfg.scale_max);
    out.x_train = apply_scaler(out.scaler, train_ds.features);
    out.x_val = apply_scaler(out.scaler, val_ds.features);
    out.x_test = apply_scaler(out.scaler, test.features);
    out.y_train = train_ds.labels;
    out.y_val = val_ds.labels;
    out.y_test = test.labels;
    log_info("splits: " + std::to_string(out.y_train.size()) + " train / " +
             std::to_string(out.y_val.size()) + " val / " +
             std::to_string(out.y_test.size()) + " test, " +
             std::to_string(k) + " features");
    return out;
}

std::string cell_name(Scheme scheme, Topology topology) {
    return to_string(scheme) + "+" + to_string(topology);
}

namespace {

std::string file_stem(const std::string& name) {
    std::string stem = name;
    for (char& c : stem) {
        if (c == '+') c = '_';
    }
    return stem;
}

double accuracy_at(const std::vector<double>& p0s,
                   const std::vector<int>& y, double tau) {
    long hits = 0;
    for (size_t i = 0; i < p0s.size(); ++i) {
        hits += classify(p0s[i], tau) == y[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(p0s.size());
}

json panel_to_json(const MetricPanel& m) {
    return json{{"accuracy", m.accuracy}, {"precision", m.precision},
                {"recall", m.recall},     {"f1", m.f1},
                {"mcc", m.mcc},           {"fpr", m.fpr},
                {"degenerate", m.degenerate}};
}

json confusion_to_json(const ConfusionMatrix& cm) {
    return json{
        {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}, {"tp", cm.tp}};
}

void write_json(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

} // namespace

RunResult run_cell(const PreparedData& data, const ExperimentConfig& cfg,
                   Scheme scheme, Topology topology, uint64_t train_seed,
                   const std::string& out_dir) {
    RunResult res;
    res.name = cell_name(scheme, topology);

    const int k = static_cast<int>(data.x_train.cols());
    const int n_qubits =
        required_qubits(scheme, k, cfg.compact_amplitude);
    VqcConfig vcfg;
    vcfg.encoder.scheme = scheme;
    vcfg.encoder.topology = topology;
    vcfg.encoder.rotation_axis = cfg.rotation_axis;
    vcfg.encoder.n_qubits = n_qubits;
    {
        ExperimentConfig cell_cfg = cfg;
        cell_cfg.scheme = scheme;
        vcfg.encoder.repetitions = effective_repetitions(cell_cfg);
    }
    vcfg.ansatz = build_ansatz(n_qubits, cfg.layers, topology);
    vcfg.readout_qubit = cfg.readout_qubit;
    vcfg.logit_mode = cfg.logit_mode;
    vcfg.logit_scale = cfg.logit_scale;

    TrainConfig tcfg = cfg.train;
    tcfg.seed = train_seed;

    log_info(res.name + ": training " + std::to_string(tcfg.epochs) +
             " epochs on " + std::to_string(data.y_train.size()) +
             " samples (" + std::to_string(n_qubits) + " qubits, " +
             std::to_string(vcfg.ansatz.parameter_count) + " parameters)");
    res.model = train(data.x_train, data.y_train, data.x_val, data.y_val,
                      vcfg, tcfg);

    const std::vector<double> p_val =
        forward_all(data.x_val, res.model.theta, vcfg);
    const double tau = tune_threshold(p_val, data.y_val);
    res.model.threshold = tau;
    res.model.config.threshold = tau;

    const std::vector<double> p_train =
        forward_all(data.x_train, res.model.theta, vcfg);
    const std::vector<double> p_test =
        forward_all(data.x_test, res.model.theta, vcfg);
    res.train_acc = accuracy_at(p_train, data.y_train, tau);
    res.val_acc = accuracy_at(p_val, data.y_val, tau);
    res.test_acc = accuracy_at(p_test, data.y_test, tau);

    std::vector<int> preds;
    preds.reserve(p_test.size());
    for (const double p : p_test) {
        preds.push_back(classify(p, tau));
    }
    res.test_confusion = confusion(preds, data.y_test);
    res.test_metrics = panel(res.test_confusion);

    std::filesystem::create_directories(out_dir);
    const std::string stem =
        (std::filesystem::path(out_dir) / file_stem(res.name)).string();
    res.model_path = stem + "_model.json";
    res.report_path = stem + "_report.json";
    res.curves_path = stem + "_curves.csv";

    ModelFile mf;
    mf.model = res.model;
    mf.scaler = data.scaler;
    mf.selected_features = data.selected;
    mf.feature_names = data.selected_names;
    save_model(mf, res.model_path);
    export_curves(res.model.history, res.curves_path);

    json report;
    report["name"] = res.name;
    report["config"] = {
        {"scheme", to_string(scheme)},
        {"topology", to_string(topology)},
        {"repetitions", vcfg.encoder.repetitions},
        {"rotation_axis", to_string(cfg.rotation_axis)},
        {"n_qubits", n_qubits},
        {"layers", cfg.layers},
        {"parameter_count", vcfg.ansatz.parameter_count},
        {"readout_qubit", cfg.readout_qubit},
        {"logit_mode", to_string(cfg.logit_mode)},
        {"logit_scale", cfg.logit_scale},
        {"scale_max", cfg.scale_max},
        {"epochs", tcfg.epochs},
        {"batch_size", tcfg.batch_size},
        {"learning_rate", tcfg.learning_rate},
        {"train_seed", tcfg.seed},
        {"master_seed", cfg.seed},
    };
    report["data"] = {
        {"n_train", data.y_train.size()},
        {"n_val", data.y_val.size()},
        {"n_test", data.y_test.size()},
        {"selected_features", data.selected},
        {"feature_names", data.selected_names},
    };
    report["threshold"] = tau;
    report["confusion"] = confusion_to_json(res.test_confusion);
    report["metrics"] = panel_to_json(res.test_metrics);
    report["accuracy"] = {{"train", res.train_acc},
                          {"val", res.val_acc},
                          {"test", res.test_acc}};
    write_json(report, res.report_path);

    log_info(res.name + ": test accuracy " +
             std::to_string(res.test_acc) + " at threshold " +
             std::to_string(tau));
    res.ok = true;
    return res;
}

RunResult run_training(const ExperimentConfig& cfg,
                       const std::string& out_dir) {
    const PreparedData data = prepare_data(cfg);
    const std::string name = cell_name(cfg.scheme, cfg.topology);
    const uint64_t seed = mix_seed(cfg.seed, hash_str(name));
    return run_cell(data, cfg, cfg.scheme, cfg.topology, seed, out_dir);
}

GridOutcome run_grid(const ExperimentConfig& cfg, const std::string& out_dir,
                     int jobs, const std::vector<Scheme>& schemes,
                     const std::vector<Topology>& topologies) {
    if (schemes.empty() || topologies.empty()) {
        throw ConfigError("grid needs at least one scheme and one topology");
    }
    struct Cell {
        Scheme scheme;
        Topology topology;
        std::string name;
    };
    std::vector<Cell> cells;
    bool baseline_present = false;
    for (const Scheme s : schemes) {
        for (const Topology t : topologies) {
            cells.push_back({s, t, cell_name(s, t)});
            baseline_present |= cells.back().name == cfg.grid_baseline;
        }
    }
    if (!baseline_present) {
        throw ConfigError("grid baseline '" + cfg.grid_baseline +
                          "' is not among the requested cells");
    }

    const PreparedData data = prepare_data(cfg);

    GridOutcome outcome;
    outcome.cells.resize(cells.size());
    std::atomic<size_t> next{0};
    const auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= cells.size()) {
                return;
            }
            const Cell& cell = cells[i];
            const uint64_t seed = mix_seed(cfg.seed, hash_str(cell.name));
            try {
                outcome.cells[i] = run_cell(data, cfg, cell.scheme,
                                            cell.topology, seed, out_dir);
            } catch (const std::exception& e) {
                RunResult failed;
                failed.name = cell.name;
                failed.ok = false;
                failed.error = e.what();
                outcome.cells[i] = failed;
                log_warn(cell.name + ": failed: " + failed.error);
            }
        }
    };
    const int n_jobs = std::max(
        1, std::min<int>(jobs, static_cast<int>(cells.size())));
    if (n_jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_jobs));
        for (int j = 0; j < n_jobs; ++j) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    // Comparison table: deltas vs the baseline over the cells that ran.
    std::vector<RunAccuracy> accs;
    for (const RunResult& r : outcome.cells) {
        if (r.ok) {
            accs.push_back({r.name, r.train_acc, r.val_acc, r.test_acc});
        }
    }
    bool baseline_ok = false;
    for (const RunAccuracy& a : accs) {
        baseline_ok |= a.name == cfg.grid_baseline;
    }
    std::vector<RunDelta> deltas;
    if (baseline_ok) {
        deltas = compare_runs(accs, cfg.grid_baseline);
    }

    json comparison;
    comparison["baseline"] = cfg.grid_baseline;
    if (!baseline_ok) {
        comparison["error"] =
            "baseline cell failed; deltas are unavailable";
    }
    comparison["runs"] = json::array();
    for (const RunResult& r : outcome.cells) {
        json row;
        row["name"] = r.name;
        row["status"] = r.ok ? "ok" : "failed";
        if (!r.ok) {
            row["error"] = r.error;
            comparison["runs"].push_back(row);
            continue;
        }
        row["accuracy"] = {{"train", r.train_acc},
                           {"val", r.val_acc},
                           {"test", r.test_acc}};
        for (const RunDelta& d : deltas) {
            if (d.name == r.name) {
                row["deltas"] = {{"test_pp", d.test_delta_pp},
                                 {"val_pp", d.val_delta_pp},
                                 {"train_val_gap_pp", d.train_val_gap_pp},
                                 {"test_relative_pct", d.test_delta_rel}};
                break;
            }
        }
        row["threshold"] = r.model.threshold;
        row["confusion"] = confusion_to_json(r.test_confusion);
        row["metrics"] = panel_to_json(r.test_metrics);
        comparison["runs"].push_back(row);
    }
    std::filesystem::create_directories(out_dir);
    outcome.comparison_path =
        (std::filesystem::path(out_dir) / "comparison.json").string();
    write_json(comparison, outcome.comparison_path);
    return outcome;
}

} // namespace vqclab
