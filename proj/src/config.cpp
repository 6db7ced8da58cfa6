#include "vqclab/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vqclab {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) {
        return "";
    }
    const size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

long parse_int(const std::string& key, const std::string& value) {
    long out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end || value.empty()) {
        throw ConfigError("key '" + key + "': '" + value +
                          "' is not an integer");
    }
    return out;
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
    uint64_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end || value.empty()) {
        throw ConfigError("key '" + key + "': '" + value +
                          "' is not an unsigned integer");
    }
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end || value.empty()) {
        throw ConfigError("key '" + key + "': '" + value +
                          "' is not a number");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" +
                      value + "'");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key or value");
        }

        try {
            if (key == "data.source") {
                if (value != "synthetic" && value != "csv") {
                    throw ConfigError("key 'data.source': expected "
                                      "synthetic or csv, got '" +
                                      value + "'");
                }
                cfg.data_source = value;
            } else if (key == "data.csv_path") {
                cfg.csv_path = value;
            } else if (key == "data.label_column") {
                cfg.label_column = value;
            } else if (key == "data.legit") {
                cfg.legit = static_cast<int>(parse_int(key, value));
            } else if (key == "data.fraud") {
                cfg.fraud = static_cast<int>(parse_int(key, value));
            } else if (key == "data.features") {
                cfg.features = static_cast<int>(parse_int(key, value));
            } else if (key == "data.difficulty") {
                cfg.difficulty = difficulty_from_string(value);
            } else if (key == "split.train_fraction") {
                cfg.train_fraction = parse_real(key, value);
            } else if (key == "split.val_fraction") {
                cfg.val_fraction = parse_real(key, value);
            } else if (key == "scale.max") {
                cfg.scale_max = parse_real(key, value);
            } else if (key == "select.enabled") {
                cfg.select_enabled = parse_bool(key, value);
            } else if (key == "select.k") {
                cfg.select_k = static_cast<int>(parse_int(key, value));
            } else if (key == "select.trees") {
                cfg.rf.n_trees = static_cast<int>(parse_int(key, value));
            } else if (key == "select.max_depth") {
                cfg.rf.max_depth = static_cast<int>(parse_int(key, value));
            } else if (key == "select.min_samples_split") {
                cfg.rf.min_samples_split =
                    static_cast<int>(parse_int(key, value));
            } else if (key == "encoder.scheme") {
                cfg.scheme = scheme_from_string(value);
            } else if (key == "encoder.repetitions") {
                cfg.repetitions = static_cast<int>(parse_int(key, value));
            } else if (key == "encoder.rotation_axis") {
                cfg.rotation_axis = axis_from_string(value);
            } else if (key == "encoder.compact_amplitude") {
                cfg.compact_amplitude = parse_bool(key, value);
            } else if (key == "topology") {
                cfg.topology = topology_from_string(value);
            } else if (key == "ansatz.layers") {
                cfg.layers = static_cast<int>(parse_int(key, value));
            } else if (key == "readout_qubit") {
                cfg.readout_qubit = static_cast<int>(parse_int(key, value));
            } else if (key == "logit.mode") {
                cfg.logit_mode = logit_mode_from_string(value);
            } else if (key == "logit.scale") {
                cfg.logit_scale = parse_real(key, value);
            } else if (key == "train.epochs") {
                cfg.train.epochs = static_cast<int>(parse_int(key, value));
            } else if (key == "train.batch_size") {
                cfg.train.batch_size =
                    static_cast<int>(parse_int(key, value));
            } else if (key == "train.learning_rate") {
                cfg.train.learning_rate = parse_real(key, value);
            } else if (key == "train.beta1") {
                cfg.train.beta1 = parse_real(key, value);
            } else if (key == "train.beta2") {
                cfg.train.beta2 = parse_real(key, value);
            } else if (key == "train.epsilon") {
                cfg.train.epsilon = parse_real(key, value);
            } else if (key == "seed") {
                cfg.seed = parse_u64(key, value);
            } else if (key == "output.dir") {
                cfg.output_dir = value;
            } else if (key == "grid.baseline") {
                cfg.grid_baseline = value;
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        } catch (ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": " + e.what());
        }
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.data_source == "csv") {
        if (cfg.csv_path.empty()) {
            throw ConfigError("data.source = csv requires data.csv_path");
        }
        if (!std::filesystem::exists(cfg.csv_path)) {
            throw ConfigError("data.csv_path '" + cfg.csv_path +
                              "' does not exist");
        }
    } else {
        if (cfg.legit < 1 || cfg.fraud < 1) {
            throw ConfigError("generator class counts must be >= 1");
        }
        if (cfg.features < 4) {
            throw ConfigError("data.features must be >= 4, got " +
                              std::to_string(cfg.features));
        }
    }
    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
        throw ConfigError("split.train_fraction must lie in (0,1)");
    }
    if (!(cfg.val_fraction > 0.0 && cfg.val_fraction < 1.0)) {
        throw ConfigError("split.val_fraction must lie in (0,1)");
    }
    if (!(cfg.scale_max > 0.0 && cfg.scale_max <= kPi)) {
        throw ConfigError("scale.max must lie in (0, pi]");
    }
    if (cfg.select_k < 1) {
        throw ConfigError("select.k must be >= 1");
    }
    if (cfg.rf.n_trees < 1 || cfg.rf.max_depth < 1 ||
        cfg.rf.min_samples_split < 2) {
        throw ConfigError("forest parameters out of range (need trees >= 1, "
                          "depth >= 1, min_samples_split >= 2)");
    }
    if (cfg.repetitions < 0) {
        throw ConfigError("encoder.repetitions must be >= 1 (or omitted "
                          "for the per-scheme default)");
    }
    if (cfg.layers < 1 || cfg.layers > 6) {
        throw ConfigError("ansatz.layers must lie in [1, 6], got " +
                          std::to_string(cfg.layers));
    }
    if (cfg.readout_qubit < 0) {
        throw ConfigError("readout_qubit must be >= 0");
    }
    if (!(cfg.logit_scale > 0.0)) {
        throw ConfigError("logit.scale must be > 0");
    }
    if (cfg.train.epochs < 1) {
        throw ConfigError("train.epochs must be >= 1");
    }
    if (cfg.train.batch_size < 1) {
        throw ConfigError("train.batch_size must be >= 1");
    }
    if (!(cfg.train.learning_rate > 0.0 && cfg.train.learning_rate < 1.0)) {
        throw ConfigError("train.learning_rate must lie in (0,1)");
    }
    if (!(cfg.train.beta1 >= 0.0 && cfg.train.beta1 < 1.0) ||
        !(cfg.train.beta2 >= 0.0 && cfg.train.beta2 < 1.0)) {
        throw ConfigError("adam betas must lie in [0,1)");
    }
    if (!(cfg.train.epsilon > 0.0)) {
        throw ConfigError("train.epsilon must be > 0");
    }
    if (cfg.output_dir.empty()) {
        throw ConfigError("output.dir must not be empty");
    }
}

int effective_repetitions(const ExperimentConfig& cfg) {
    if (cfg.repetitions > 0) {
        return cfg.repetitions;
    }
    return cfg.scheme == Scheme::ZZ ? 2 : 1;
}

} // namespace vqclab
