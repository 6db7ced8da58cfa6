#include "vqclab/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace vqclab {

using json = nlohmann::ordered_json;

std::string double_to_hex(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double hex_to_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + s.size() || s.empty()) {
        throw ParseError("malformed float literal '" + s + "'");
    }
    return v;
}

namespace {

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(double_to_hex(v[i]));
    }
    return arr;
}

Vec vec_from_json(const json& arr) {
    Vec v(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto& item : arr) {
        v[i++] = hex_to_double(item.get<std::string>());
    }
    return v;
}

} // namespace

void save_model(const ModelFile& mf, const std::string& path) {
    const VqcConfig& cfg = mf.model.config;
    const TrainConfig& tcfg = mf.model.train_config;
    json doc;
    doc["format"] = "vqclab-model-v1";
    doc["encoder"] = {
        {"scheme", to_string(cfg.encoder.scheme)},
        {"topology", to_string(cfg.encoder.topology)},
        {"repetitions", cfg.encoder.repetitions},
        {"rotation_axis", to_string(cfg.encoder.rotation_axis)},
        {"n_qubits", cfg.encoder.n_qubits},
    };
    doc["ansatz"] = {
        {"n_qubits", cfg.ansatz.n_qubits},
        {"layers", cfg.ansatz.layers},
        {"topology", to_string(cfg.ansatz.topology)},
    };
    doc["readout_qubit"] = cfg.readout_qubit;
    doc["logit_mode"] = to_string(cfg.logit_mode);
    doc["logit_scale"] = double_to_hex(cfg.logit_scale);
    doc["threshold"] = double_to_hex(mf.model.threshold);
    doc["train"] = {
        {"epochs", tcfg.epochs},
        {"batch_size", tcfg.batch_size},
        {"learning_rate", double_to_hex(tcfg.learning_rate)},
        {"beta1", double_to_hex(tcfg.beta1)},
        {"beta2", double_to_hex(tcfg.beta2)},
        {"epsilon", double_to_hex(tcfg.epsilon)},
        {"seed", tcfg.seed},
        {"shift", double_to_hex(tcfg.shift)},
    };
    doc["theta"] = vec_to_json(mf.model.theta);
    doc["scaler"] = {
        {"min", vec_to_json(mf.scaler.feat_min)},
        {"max", vec_to_json(mf.scaler.feat_max)},
        {"scale_max", double_to_hex(mf.scaler.scale_max)},
    };
    doc["selected_features"] = mf.selected_features;
    doc["feature_names"] = mf.feature_names;

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open model file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError("model file '" + path + "' is not valid JSON: " +
                         e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != "vqclab-model-v1") {
            throw ParseError("'" + path + "' has unknown format tag");
        }
        ModelFile mf;
        VqcConfig cfg;
        const json& enc = doc.at("encoder");
        cfg.encoder.scheme =
            scheme_from_string(enc.at("scheme").get<std::string>());
        cfg.encoder.topology =
            topology_from_string(enc.at("topology").get<std::string>());
        cfg.encoder.repetitions = enc.at("repetitions").get<int>();
        cfg.encoder.rotation_axis =
            axis_from_string(enc.at("rotation_axis").get<std::string>());
        cfg.encoder.n_qubits = enc.at("n_qubits").get<int>();
        const json& ans = doc.at("ansatz");
        cfg.ansatz = build_ansatz(
            ans.at("n_qubits").get<int>(), ans.at("layers").get<int>(),
            topology_from_string(ans.at("topology").get<std::string>()));
        cfg.readout_qubit = doc.at("readout_qubit").get<int>();
        cfg.logit_mode =
            logit_mode_from_string(doc.at("logit_mode").get<std::string>());
        cfg.logit_scale =
            hex_to_double(doc.at("logit_scale").get<std::string>());
        const json& tr = doc.at("train");
        TrainConfig tcfg;
        tcfg.epochs = tr.at("epochs").get<int>();
        tcfg.batch_size = tr.at("batch_size").get<int>();
        tcfg.learning_rate =
            hex_to_double(tr.at("learning_rate").get<std::string>());
        tcfg.beta1 = hex_to_double(tr.at("beta1").get<std::string>());
        tcfg.beta2 = hex_to_double(tr.at("beta2").get<std::string>());
        tcfg.epsilon = hex_to_double(tr.at("epsilon").get<std::string>());
        tcfg.seed = tr.at("seed").get<uint64_t>();
        tcfg.shift = hex_to_double(tr.at("shift").get<std::string>());

        mf.model.config = cfg;
        mf.model.train_config = tcfg;
        mf.model.threshold =
            hex_to_double(doc.at("threshold").get<std::string>());
        mf.model.theta = vec_from_json(doc.at("theta"));
        mf.scaler.feat_min = vec_from_json(doc.at("scaler").at("min"));
        mf.scaler.feat_max = vec_from_json(doc.at("scaler").at("max"));
        mf.scaler.scale_max =
            hex_to_double(doc.at("scaler").at("scale_max").get<std::string>());
        mf.selected_features =
            doc.at("selected_features").get<std::vector<int>>();
        mf.feature_names =
            doc.at("feature_names").get<std::vector<std::string>>();
        mf.model.config.threshold = mf.model.threshold;
        return mf;
    } catch (const json::exception& e) {
        throw ParseError("model file '" + path + "' is missing fields: " +
                         e.what());
    }
}

} // namespace vqclab
