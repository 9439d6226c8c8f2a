#include "eigenscan/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "json.hpp"

#include "eigenscan/errors.hpp"
#include "eigenscan/io_util.hpp"
#include "eigenscan/parallel.hpp"

namespace eigenscan {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kModelFormatVersion = 1;

// Squared distances are compared under a small relative slack so that
// columns at the same mathematical distance (duplicates, equal Hamming
// distance on binary data) collapse to the smallest index instead of being
// ordered by rounding noise. The slack is far below the distance-squared
// gap of 1 that distinct binary vectors produce.
constexpr double kTieRelTolerance = 1e-9;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

std::vector<double> centered_values(const FeatureVector& v, const std::vector<double>& mean) {
    std::vector<double> out(mean.size());
    for (std::size_t i = 0; i < mean.size(); ++i)
        out[i] = static_cast<double>(v.values[i]) - mean[i];
    return out;
}

void check_dimension(const EigenspaceModel& model, const FeatureVector& v) {
    if (v.values.size() != model.dimension())
        throw DataError("classify: vector \"" + v.app_id + "\" has dimension " +
                        std::to_string(v.values.size()) + ", model expects " +
                        std::to_string(model.dimension()));
}

Matrix matrix_from_json(const ordered_json& rows, std::size_t row_len, const char* what) {
    // Stored row-wise; row r of `what` becomes column r of the result.
    Matrix m(row_len, rows.size());
    std::size_t c = 0;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != row_len)
            throw DataError(std::string("model: ragged ") + what + " array");
        auto col = m.column(c++);
        std::size_t i = 0;
        for (const auto& x : row) col[i++] = x.get<double>();
    }
    return m;
}

// Model documents keep every real at 17 significant digits, enough to
// reparse to the identical double.
std::string real_cell(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.16e", value);
    return buffer;
}

std::string real_array(std::span<const double> values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += real_cell(values[i]);
    }
    return out + "]";
}

std::string quoted(const std::string& text) { return ordered_json(text).dump(); }

std::string string_array(const std::vector<std::string>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += quoted(values[i]);
    }
    return out + "]";
}

void validate_model(const EigenspaceModel& m) {
    const std::size_t n = m.dimension();
    const std::size_t nprime = m.subspace_dimension();
    const std::size_t k = m.sample_count();
    if (m.feature_names.size() != n || n == 0) throw DataError("model: bad feature names");
    if (nprime == 0 || nprime > n) throw DataError("model: bad subspace dimension");
    if (m.basis.rows() != n || m.basis.cols() != nprime)
        throw DataError("model: basis shape mismatch");
    if (m.weights.rows() != nprime || m.weights.cols() != k)
        throw DataError("model: weight shape mismatch");
    if (m.app_ids.size() != k || k == 0) throw DataError("model: bad app ids");
    if (m.malware_threshold == 0 || m.malware_threshold >= k)
        throw DataError("model: malware threshold outside (0, K)");
    for (std::size_t i = 0; i < k; ++i)
        if ((m.labels[i] == Label::Malware) != (i < m.malware_threshold))
            throw DataError("model: labels not in malware-first order");
    if (!(m.variance_threshold > 0.0) || m.variance_threshold > 1.0)
        throw DataError("model: variance threshold outside (0,1]");
    for (std::size_t i = 1; i < nprime; ++i)
        if (m.eigenvalues[i - 1] < m.eigenvalues[i])
            throw DataError("model: eigenvalues not in descending order");
    // Basis must still be orthonormal after a round trip.
    for (std::size_t a = 0; a < nprime; ++a) {
        const auto col_a = m.basis.column(a);
        for (std::size_t b = a; b < nprime; ++b) {
            double dot = 0.0;
            const auto col_b = m.basis.column(b);
            for (std::size_t i = 0; i < n; ++i) dot += col_a[i] * col_b[i];
            const double target = a == b ? 1.0 : 0.0;
            if (std::abs(dot - target) > 1e-8)
                throw DataError("model: basis is not orthonormal");
        }
    }
}

}  // namespace

TrainingSet TrainingSet::from_dataset(const Dataset& dataset, std::string catalog_version) {
    TrainingSet s;
    s.feature_names = dataset.feature_names;
    s.catalog_version = std::move(catalog_version);
    s.vectors.reserve(dataset.size());
    for (const auto& vec : dataset.vectors) {  // malware block first, stable
        if (!vec.label)
            throw DataError("training set: vector \"" + vec.app_id + "\" has no label");
        if (*vec.label == Label::Malware) {
            s.vectors.push_back(vec);
            ++s.malware_count;
        }
    }
    for (const auto& vec : dataset.vectors) {
        if (*vec.label == Label::Benign) {
            s.vectors.push_back(vec);
            ++s.benign_count;
        }
    }
    if (s.malware_count == 0 || s.benign_count == 0)
        throw DataError("training set: both classes must be present (got " +
                        std::to_string(s.malware_count) + " malware, " +
                        std::to_string(s.benign_count) + " benign)");
    for (const auto& vec : s.vectors)
        if (vec.values.size() != s.dimension())
            throw DataError("training set: vector \"" + vec.app_id + "\" has dimension " +
                            std::to_string(vec.values.size()) + ", expected " +
                            std::to_string(s.dimension()));
    return s;
}

EigenspaceModel train(const TrainingSet& s, double variance_threshold) {
    const std::size_t n = s.dimension();
    const std::size_t k = s.size();
    if (k < 2) throw DataError("train: need at least two samples");

    bool all_identical = true;
    for (std::size_t i = 1; i < k && all_identical; ++i)
        all_identical = s.vectors[i].values == s.vectors[0].values;
    if (all_identical)
        throw DegeneracyError("train: all training vectors are identical (zero covariance)");

    Matrix raw(n, k);
    for (std::size_t c = 0; c < k; ++c) {
        auto col = raw.column(c);
        for (std::size_t r = 0; r < n; ++r) col[r] = static_cast<double>(s.vectors[c].values[r]);
    }

    EigenspaceModel model;
    model.catalog_version = s.catalog_version;
    model.feature_names = s.feature_names;
    model.variance_threshold = variance_threshold;
    model.mean = compute_mean(raw);
    const Matrix centered = center(raw, model.mean);
    const EigenPairs basis = select_eigenvectors(eigendecompose(covariance(centered)),
                                                 variance_threshold);
    model.eigenvalues = basis.values;
    model.basis = basis.vectors;

    model.weights = Matrix(basis.count(), k);
    for (std::size_t c = 0; c < k; ++c) {
        const auto w = project(centered.column(c), basis);
        std::copy(w.begin(), w.end(), model.weights.column(c).begin());
    }

    model.labels.reserve(k);
    model.app_ids.reserve(k);
    for (const auto& vec : s.vectors) {
        model.labels.push_back(*vec.label);
        model.app_ids.push_back(vec.app_id);
    }
    model.malware_threshold = s.malware_count;
    return model;
}

ClassificationResult classify(const EigenspaceModel& model, const FeatureVector& v) {
    check_dimension(model, v);
    const std::vector<double> centered = centered_values(v, model.mean);
    EigenPairs basis;  // borrow the stored basis for projection
    basis.values = model.eigenvalues;
    basis.vectors = model.basis;
    const std::vector<double> weights = project(centered, basis);

    const std::size_t k = model.sample_count();
    double best = squared_distance(weights, model.weights.column(0));
    std::vector<double> d2(k);
    d2[0] = best;
    for (std::size_t i = 1; i < k; ++i) {
        d2[i] = squared_distance(weights, model.weights.column(i));
        if (d2[i] < best) best = d2[i];
    }
    const double slack = best + kTieRelTolerance * std::max(1.0, best);
    std::size_t nearest = 0;
    while (d2[nearest] > slack) ++nearest;

    ClassificationResult result;
    result.nearest_index = nearest + 1;
    result.score = std::sqrt(d2[nearest]);
    result.predicted = result.nearest_index <= model.malware_threshold ? Label::Malware
                                                                       : Label::Benign;
    result.nearest_app_id = model.app_ids[nearest];
    return result;
}

std::vector<ClassificationResult> classify_batch(const EigenspaceModel& model,
                                                 const std::vector<FeatureVector>& vs,
                                                 unsigned threads) {
    std::string bad;
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i].values.size() != model.dimension()) {
            if (!bad.empty()) bad += ", ";
            bad += std::to_string(i);
        }
    if (!bad.empty())
        throw DataError("classify: dimension mismatch at input indices [" + bad + "]; model expects " +
                        std::to_string(model.dimension()));

    std::vector<ClassificationResult> out(vs.size());
    parallel_for(vs.size(), threads, [&](std::size_t i) { out[i] = classify(model, vs[i]); });
    return out;
}

std::string format_model(const EigenspaceModel& model) {
    std::string out = "{\n";
    out += " \"format\": " + quoted(kEigenspaceModelFormat) + ",\n";
    out += " \"format_version\": " + std::to_string(kModelFormatVersion) + ",\n";
    out += " \"catalog_version\": " + quoted(model.catalog_version) + ",\n";
    out += " \"variance_threshold\": " + real_cell(model.variance_threshold) + ",\n";
    out += " \"feature_names\": " + string_array(model.feature_names) + ",\n";
    out += " \"mean\": " + real_array(model.mean) + ",\n";
    out += " \"eigenvalues\": " + real_array(model.eigenvalues) + ",\n";
    out += " \"eigenvector_rows\": [\n";  // row j = eigenvector j
    for (std::size_t j = 0; j < model.basis.cols(); ++j) {
        out += "  " + real_array(model.basis.column(j));
        out += j + 1 < model.basis.cols() ? ",\n" : "\n";
    }
    out += " ],\n \"weight_columns\": [\n";  // entry i = training sample i
    for (std::size_t i = 0; i < model.weights.cols(); ++i) {
        out += "  " + real_array(model.weights.column(i));
        out += i + 1 < model.weights.cols() ? ",\n" : "\n";
    }
    out += " ],\n";
    std::vector<std::string> labels;
    labels.reserve(model.labels.size());
    for (auto label : model.labels) labels.emplace_back(to_string(label));
    out += " \"labels\": " + string_array(labels) + ",\n";
    out += " \"app_ids\": " + string_array(model.app_ids) + ",\n";
    out += " \"malware_threshold\": " + std::to_string(model.malware_threshold) + "\n";
    out += "}\n";
    return out;
}

EigenspaceModel parse_model(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model: not valid JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != kEigenspaceModelFormat)
            throw DataError("model: not an eigenspace model document");
        if (doc.value("format_version", 0) != kModelFormatVersion)
            throw DataError("model: unsupported format_version");
        EigenspaceModel m;
        m.catalog_version = doc.value("catalog_version", "");
        m.variance_threshold = doc.at("variance_threshold").get<double>();
        m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
        m.mean = doc.at("mean").get<std::vector<double>>();
        m.eigenvalues = doc.at("eigenvalues").get<std::vector<double>>();
        if (m.mean.size() != m.feature_names.size()) throw DataError("model: mean length mismatch");
        m.basis = matrix_from_json(doc.at("eigenvector_rows"), m.mean.size(), "eigenvector");
        if (m.basis.cols() != m.eigenvalues.size())
            throw DataError("model: eigenvector/eigenvalue count mismatch");
        m.weights = matrix_from_json(doc.at("weight_columns"), m.eigenvalues.size(), "weight");
        for (const auto& text : doc.at("labels")) {
            const auto label = parse_label(text.get<std::string>());
            if (!label) throw DataError("model: bad label \"" + text.get<std::string>() + "\"");
            m.labels.push_back(*label);
        }
        m.app_ids = doc.at("app_ids").get<std::vector<std::string>>();
        if (m.labels.size() != m.weights.cols() || m.app_ids.size() != m.labels.size())
            throw DataError("model: label/weight count mismatch");
        m.malware_threshold = doc.at("malware_threshold").get<std::size_t>();
        validate_model(m);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model: malformed document: ") + e.what());
    }
}

void save_model(const EigenspaceModel& model, const std::filesystem::path& path) {
    write_text_file_atomic(path, format_model(model));
}

EigenspaceModel load_model(const std::filesystem::path& path) {
    try {
        return parse_model(read_text_file(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::string model_format(const std::filesystem::path& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": not valid JSON: " + e.what());
    }
    const auto format = doc.value("format", "");
    if (format.empty()) throw DataError(path.string() + ": not a model document");
    return format;
}

}  // namespace eigenscan
