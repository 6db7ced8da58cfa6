// vqclab: train and compare variational quantum classifiers on fraud-style
// tabular data. Subcommands: generate, select-features, train, grid,
// report. Exit codes: 0 success, 2 usage/config error, 3 training
// divergence, 1 unexpected runtime failure.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqclab/config.hpp"
#include "vqclab/log.hpp"
#include "vqclab/model_io.hpp"
#include "vqclab/pipeline.hpp"
#include "vqclab/rng.hpp"

namespace {

using vqclab::ConfigError;
using json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> items;
    size_t start = 0;
    while (start <= csv.size()) {
        const size_t comma = csv.find(',', start);
        const std::string item =
            csv.substr(start, comma == std::string::npos ? std::string::npos
                                                         : comma - start);
        if (!item.empty()) {
            items.push_back(item);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return items;
}

vqclab::ExperimentConfig load_config(const std::string& config_path,
                                     uint64_t* seed_override,
                                     const std::string* out_override) {
    vqclab::ExperimentConfig cfg;
    if (!config_path.empty()) {
        cfg = vqclab::parse_config_file(config_path);
    }
    if (seed_override) {
        cfg.seed = *seed_override;
    }
    if (out_override && !out_override->empty()) {
        cfg.output_dir = *out_override;
    }
    vqclab::validate_config(cfg);
    return cfg;
}

int cmd_generate(int legit, int fraud, int features,
                 const std::string& difficulty, uint64_t seed,
                 const std::string& out_path) {
    const vqclab::Dataset ds = vqclab::generate_synthetic(
        legit, fraud, features, vqclab::difficulty_from_string(difficulty),
        vqclab::derive_seed(seed, "dataset"));
    vqclab::write_csv(ds, out_path);
    std::printf("wrote %s (%d legit + %d fraud = %d rows)\n",
                out_path.c_str(), legit, fraud, legit + fraud);
    return 0;
}

int cmd_select_features(const std::string& config_path, int k_override,
                        const std::string& out_path) {
    vqclab::ExperimentConfig cfg = load_config(config_path, nullptr, nullptr);
    if (k_override > 0) {
        cfg.select_k = k_override;
    }
    vqclab::Dataset ds;
    if (cfg.data_source == "csv") {
        ds = vqclab::load_csv(cfg.csv_path, cfg.label_column);
    } else {
        ds = vqclab::generate_synthetic(
            cfg.legit, cfg.fraud, cfg.features, cfg.difficulty,
            vqclab::derive_seed(cfg.seed, "dataset"));
    }
    if (cfg.select_k > ds.dim()) {
        throw ConfigError("select.k = " + std::to_string(cfg.select_k) +
                          " exceeds the " + std::to_string(ds.dim()) +
                          " available features");
    }
    vqclab::RfParams rf = cfg.rf;
    rf.seed = vqclab::derive_seed(cfg.seed, "feature-select");
    const vqclab::Vec importance = vqclab::rf_importance(ds, rf);
    const std::vector<int> selected =
        vqclab::select_top_k(importance, cfg.select_k);

    json doc;
    doc["feature_names"] = ds.feature_names;
    doc["importance"] = json::array();
    for (Eigen::Index j = 0; j < importance.size(); ++j) {
        doc["importance"].push_back(importance[j]);
    }
    doc["selected"] = selected;
    doc["selected_names"] = json::array();
    for (const int j : selected) {
        doc["selected_names"].push_back(
            ds.feature_names[static_cast<size_t>(j)]);
    }
    const std::string text = doc.dump(2);
    if (out_path.empty()) {
        std::printf("%s\n", text.c_str());
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::runtime_error("cannot open '" + out_path +
                                     "' for writing");
        }
        out << text << '\n';
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_train(const std::string& config_path, uint64_t* seed_override,
              const std::string& out_dir) {
    const vqclab::ExperimentConfig cfg =
        load_config(config_path, seed_override, &out_dir);
    const vqclab::RunResult res =
        vqclab::run_training(cfg, cfg.output_dir);
    std::printf("%s: test accuracy %.4f, threshold %.2f\n",
                res.name.c_str(), res.test_acc, res.model.threshold);
    std::printf("model:  %s\nreport: %s\ncurves: %s\n",
                res.model_path.c_str(), res.report_path.c_str(),
                res.curves_path.c_str());
    return 0;
}

int cmd_grid(const std::string& config_path, uint64_t* seed_override,
             const std::string& out_dir, int jobs,
             const std::string& encoders, const std::string& topologies) {
    const vqclab::ExperimentConfig cfg =
        load_config(config_path, seed_override, &out_dir);
    std::vector<vqclab::Scheme> schemes;
    for (const std::string& s : split_list(encoders)) {
        schemes.push_back(vqclab::scheme_from_string(s));
    }
    std::vector<vqclab::Topology> topos;
    for (const std::string& t : split_list(topologies)) {
        topos.push_back(vqclab::topology_from_string(t));
    }
    const vqclab::GridOutcome outcome =
        vqclab::run_grid(cfg, cfg.output_dir, jobs, schemes, topos);
    for (const vqclab::RunResult& r : outcome.cells) {
        if (r.ok) {
            std::printf("%-20s ok     test accuracy %.4f\n", r.name.c_str(),
                        r.test_acc);
        } else {
            std::printf("%-20s FAILED %s\n", r.name.c_str(),
                        r.error.c_str());
        }
    }
    std::printf("comparison: %s\n", outcome.comparison_path.c_str());
    return 0;
}

int cmd_report(const std::string& model_path, const std::string& data_path,
               const std::string& label_column, const std::string& out_path) {
    const vqclab::ModelFile mf = vqclab::load_model(model_path);
    vqclab::Dataset ds = vqclab::load_csv(data_path, label_column);
    for (const int j : mf.selected_features) {
        if (j >= ds.dim()) {
            throw ConfigError(
                "model selects feature column " + std::to_string(j) +
                " but '" + data_path + "' only has " +
                std::to_string(ds.dim()) + " feature columns");
        }
    }
    ds = vqclab::select_columns(ds, mf.selected_features);
    for (size_t i = 0; i < mf.feature_names.size(); ++i) {
        if (ds.feature_names[i] != mf.feature_names[i]) {
            throw ConfigError("feature name mismatch in column " +
                              std::to_string(mf.selected_features[i]) +
                              ": model was trained on '" +
                              mf.feature_names[i] + "', data has '" +
                              ds.feature_names[i] + "'");
        }
    }
    const vqclab::Mat x = vqclab::apply_scaler(mf.scaler, ds.features);
    const std::vector<double> p0s =
        vqclab::forward_all(x, mf.model.theta, mf.model.config);
    std::vector<int> preds;
    preds.reserve(p0s.size());
    for (const double p : p0s) {
        preds.push_back(vqclab::classify(p, mf.model.threshold));
    }
    const vqclab::ConfusionMatrix cm = vqclab::confusion(preds, ds.labels);
    const vqclab::MetricPanel m = vqclab::panel(cm);

    json doc;
    doc["model"] = model_path;
    doc["data"] = data_path;
    doc["n_samples"] = ds.size();
    doc["threshold"] = mf.model.threshold;
    doc["confusion"] = {
        {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}, {"tp", cm.tp}};
    doc["metrics"] = {{"accuracy", m.accuracy}, {"precision", m.precision},
                      {"recall", m.recall},     {"f1", m.f1},
                      {"mcc", m.mcc},           {"fpr", m.fpr},
                      {"degenerate", m.degenerate}};
    const std::string text = doc.dump(2);
    if (out_path.empty()) {
        std::printf("%s\n", text.c_str());
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::runtime_error("cannot open '" + out_path +
                                     "' for writing");
        }
        out << text << '\n';
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational quantum classifier laboratory"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate",
                                   "write a synthetic dataset CSV");
    int legit = 1600, fraud = 800, features = 8;
    std::string difficulty = "medium";
    uint64_t gen_seed = 42;
    std::string gen_out = "data.csv";
    gen->add_option("--legit", legit, "legitimate-class sample count");
    gen->add_option("--fraud", fraud, "fraud-class sample count");
    gen->add_option("--features", features, "raw feature count (>= 4)");
    gen->add_option("--difficulty", difficulty, "easy, medium or hard");
    gen->add_option("--seed", gen_seed, "master seed");
    gen->add_option("-o,--output", gen_out, "output CSV path");

    // select-features
    auto* sel = app.add_subcommand(
        "select-features", "rank features by forest importance");
    std::string sel_config, sel_out;
    int sel_k = 0;
    sel->add_option("--config", sel_config, "experiment config file");
    sel->add_option("--k", sel_k, "override select.k");
    sel->add_option("-o,--output", sel_out, "write JSON here (else stdout)");

    // train
    auto* tr = app.add_subcommand("train", "train one classifier");
    std::string tr_config, tr_out;
    uint64_t tr_seed = 0;
    tr->add_option("--config", tr_config, "experiment config file");
    tr->add_option("--seed", tr_seed, "override the master seed");
    tr->add_option("-o,--output", tr_out, "output directory");

    // grid
    auto* gr = app.add_subcommand(
        "grid", "train every encoding x topology combination");
    std::string gr_config, gr_out;
    std::string gr_encoders = "zz,angle,amplitude";
    std::string gr_topologies = "linear,circular,full";
    uint64_t gr_seed = 0;
    int jobs = 1;
    gr->add_option("--config", gr_config, "experiment config file");
    gr->add_option("--seed", gr_seed, "override the master seed");
    gr->add_option("--jobs", jobs, "parallel grid cells");
    gr->add_option("--encoders", gr_encoders,
                   "comma-separated encoder subset");
    gr->add_option("--topologies", gr_topologies,
                   "comma-separated topology subset");
    gr->add_option("-o,--output", gr_out, "output directory");

    // report
    auto* rp = app.add_subcommand(
        "report", "evaluate a saved model on a CSV dataset");
    std::string rp_model, rp_data, rp_label = "label", rp_out;
    rp->add_option("--model", rp_model, "model JSON path")->required();
    rp->add_option("--data", rp_data, "dataset CSV path")->required();
    rp->add_option("--label-column", rp_label, "label column name");
    rp->add_option("-o,--output", rp_out, "write JSON here (else stdout)");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            return cmd_generate(legit, fraud, features, difficulty, gen_seed,
                                gen_out);
        }
        if (sel->parsed()) {
            return cmd_select_features(sel_config, sel_k, sel_out);
        }
        if (tr->parsed()) {
            return cmd_train(
                tr_config, tr->count("--seed") ? &tr_seed : nullptr, tr_out);
        }
        if (gr->parsed()) {
            return cmd_grid(
                gr_config, gr->count("--seed") ? &gr_seed : nullptr, gr_out,
                jobs, gr_encoders, gr_topologies);
        }
        if (rp->parsed()) {
            return cmd_report(rp_model, rp_data, rp_label, rp_out);
        }
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const vqclab::DivergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDivergence;
    } catch (const vqclab::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const vqclab::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
