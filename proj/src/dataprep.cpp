#include "vqclab/dataprep.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "vqclab/rng.hpp"

namespace vqclab {

std::string to_string(Difficulty d) {
    switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
    }
    return "?";
}

Difficulty difficulty_from_string(const std::string& name) {
    if (name == "easy") return Difficulty::Easy;
    if (name == "medium") return Difficulty::Medium;
    if (name == "hard") return Difficulty::Hard;
    throw ConfigError("unknown difficulty '" + name +
                      "' (expected easy, medium or hard)");
}

Dataset generate_synthetic(int n_legit, int n_fraud, int d_raw,
                           Difficulty difficulty, uint64_t seed) {
    if (n_legit < 1 || n_fraud < 1) {
        throw ConfigError("class counts must be >= 1, got " +
                          std::to_string(n_legit) + "/" +
                          std::to_string(n_fraud));
    }
    if (d_raw < 4) {
        throw ConfigError("generator needs d_raw >= 4 (2 informative + 2 "
                          "noise minimum), got " +
                          std::to_string(d_raw));
    }
    double separation = 1.5;
    switch (difficulty) {
    case Difficulty::Easy: separation = 3.0; break;
    case Difficulty::Medium: separation = 1.5; break;
    case Difficulty::Hard: separation = 0.75; break;
    }
    const int n_info = d_raw - 2; // last two columns are pure noise
    const int total = n_legit + n_fraud;
    // Fraud sits in a tighter cluster than legitimate traffic; its spread
    // on informative features is halved.
    const double fraud_sigma = 0.5;

    Dataset ds;
    ds.features.resize(total, d_raw);
    ds.labels.assign(static_cast<size_t>(total), 0);
    for (int j = 0; j < d_raw; ++j) {
        ds.feature_names.push_back("f" + std::to_string(j));
    }
    Rng rng(derive_seed(seed, "synthetic-data"));
    for (int i = 0; i < total; ++i) {
        const int label = i < n_legit ? 0 : 1;
        ds.labels[static_cast<size_t>(i)] = label;
        for (int j = 0; j < d_raw; ++j) {
            double v = rng.gauss();
            if (label == 1 && j < n_info) {
                const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                v = sign * separation + fraud_sigma * v;
            }
            ds.features(i, j) = v;
        }
    }
    return ds;
}

namespace {

double parse_number(const std::string& field, size_t line_no,
                    const std::string& col) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed number '" + field + "' in column '" +
                         col + "'");
    }
    return value;
}

std::vector<std::string> split_fields(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

} // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("'" + path + "' is empty (expected a header row)");
    }
    const std::vector<std::string> header = split_fields(line);
    int label_col = -1;
    for (size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) {
            label_col = static_cast<int>(j);
            break;
        }
    }
    if (label_col < 0) {
        throw ParseError("'" + path + "' has no column named '" +
                         label_column + "'");
    }
    const int d = static_cast<int>(header.size()) - 1;
    if (d < 1) {
        throw ParseError("'" + path + "' has no feature columns");
    }

    Dataset ds;
    for (size_t j = 0; j < header.size(); ++j) {
        if (static_cast<int>(j) != label_col) {
            ds.feature_names.push_back(header[j]);
        }
    }
    std::vector<double> values;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": has " +
                             std::to_string(fields.size()) +
                             " fields, header has " +
                             std::to_string(header.size()));
        }
        for (size_t j = 0; j < fields.size(); ++j) {
            if (static_cast<int>(j) == label_col) {
                if (fields[j] == "0") {
                    ds.labels.push_back(0);
                } else if (fields[j] == "1") {
                    ds.labels.push_back(1);
                } else {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": label must be 0 or 1, got '" +
                                     fields[j] + "'");
                }
            } else {
                values.push_back(parse_number(fields[j], line_no, header[j]));
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(ds.labels.size());
    if (n == 0) {
        throw ParseError("'" + path + "' has a header but no data rows");
    }
    ds.features.resize(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            ds.features(i, j) = values[static_cast<size_t>(i * d + j)];
        }
    }
    return ds;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    for (size_t j = 0; j < ds.feature_names.size(); ++j) {
        std::fprintf(f, "%s,", ds.feature_names[j].c_str());
    }
    std::fputs("label\n", f);
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        for (Eigen::Index j = 0; j < ds.dim(); ++j) {
            std::fprintf(f, "%.17g,", ds.features(i, j));
        }
        std::fprintf(f, "%d\n", ds.labels[static_cast<size_t>(i)]);
    }
    if (std::fclose(f) != 0) {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

ScalerState fit_scaler(const Mat& train_features, double scale_max) {
    if (train_features.rows() < 1) {
        throw std::invalid_argument("cannot fit a scaler on zero rows");
    }
    if (!(scale_max > 0.0)) {
        throw std::invalid_argument("scaler range must be positive");
    }
    ScalerState s;
    s.feat_min = train_features.colwise().minCoeff();
    s.feat_max = train_features.colwise().maxCoeff();
    s.scale_max = scale_max;
    return s;
}

Mat apply_scaler(const ScalerState& scaler, const Mat& features) {
    if (features.cols() != scaler.feat_min.size()) {
        throw std::invalid_argument(
            "scaler was fitted on " + std::to_string(scaler.feat_min.size()) +
            " features, got " + std::to_string(features.cols()));
    }
    Mat out(features.rows(), features.cols());
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        const double lo = scaler.feat_min[j];
        const double span = scaler.feat_max[j] - lo;
        for (Eigen::Index i = 0; i < features.rows(); ++i) {
            double v = 0.0;
            if (span > 0.0) {
                v = scaler.scale_max * (features(i, j) - lo) / span;
                v = std::clamp(v, 0.0, scaler.scale_max);
            }
            out(i, j) = v;
        }
    }
    return out;
}

std::pair<Mat, Mat> fit_apply_scaler(const Mat& train, const Mat& other,
                                     double scale_max) {
    const ScalerState s = fit_scaler(train, scale_max);
    return {apply_scaler(s, train), apply_scaler(s, other)};
}

std::pair<std::vector<int>, std::vector<int>>
stratified_split_indices(const std::vector<int>& labels,
                         double train_fraction, uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ConfigError("train fraction must be in (0,1), got " +
                          std::to_string(train_fraction));
    }
    std::vector<int> by_class[2];
    for (size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i];
        if (y != 0 && y != 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
        by_class[y].push_back(static_cast<int>(i));
    }
    if (by_class[0].size() < 2 || by_class[1].size() < 2) {
        throw ConfigError("stratified split needs >= 2 samples per class");
    }
    Rng rng(derive_seed(seed, "stratified-split"));
    std::vector<int> train, test;
    for (auto& cls : by_class) {
        rng.shuffle(cls);
        const auto n_train = static_cast<size_t>(
            train_fraction * static_cast<double>(cls.size()));
        train.insert(train.end(), cls.begin(),
                     cls.begin() + static_cast<long>(n_train));
        test.insert(test.end(), cls.begin() + static_cast<long>(n_train),
                    cls.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {train, test};
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds,
                                             double train_fraction,
                                             uint64_t seed) {
    const auto [train_idx, test_idx] =
        stratified_split_indices(ds.labels, train_fraction, seed);
    return {subset_rows(ds, train_idx), subset_rows(ds, test_idx)};
}

Dataset subset_rows(const Dataset& ds, const std::vector<int>& rows) {
    Dataset out;
    out.feature_names = ds.feature_names;
    out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.dim());
    out.labels.reserve(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) {
        const int i = rows[k];
        if (i < 0 || i >= ds.size()) {
            throw std::out_of_range("row index " + std::to_string(i) +
                                    " out of range");
        }
        out.features.row(static_cast<Eigen::Index>(k)) = ds.features.row(i);
        out.labels.push_back(ds.labels[static_cast<size_t>(i)]);
    }
    return out;
}

Dataset select_columns(const Dataset& ds, const std::vector<int>& cols) {
    Dataset out;
    out.features.resize(ds.size(), static_cast<Eigen::Index>(cols.size()));
    out.labels = ds.labels;
    for (size_t k = 0; k < cols.size(); ++k) {
        const int j = cols[k];
        if (j < 0 || j >= ds.dim()) {
            throw std::out_of_range("column index " + std::to_string(j) +
                                    " out of range");
        }
        out.features.col(static_cast<Eigen::Index>(k)) = ds.features.col(j);
        out.feature_names.push_back(ds.feature_names[static_cast<size_t>(j)]);
    }
    return out;
}

std::vector<int> select_top_k(const Vec& scores, int k) {
    const int d = static_cast<int>(scores.size());
    if (k < 1 || k > d) {
        throw std::invalid_argument("top-k selection needs 1 <= k <= " +
                                    std::to_string(d) + ", got " +
                                    std::to_string(k));
    }
    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores[a] > scores[b]; // stable: ties keep lower index first
    });
    order.resize(static_cast<size_t>(k));
    return order;
}

} // namespace vqclab
