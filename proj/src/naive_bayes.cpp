#include "eigenscan/naive_bayes.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "eigenscan/errors.hpp"
#include "eigenscan/io_util.hpp"
#include "eigenscan/parallel.hpp"

namespace eigenscan {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kNbFormatVersion = 1;

}  // namespace

NaiveBayesModel nb_train(const TrainingSet& s, double alpha) {
    if (!(alpha > 0.0)) throw DataError("nb_train: alpha must be > 0");
    const std::size_t n = s.dimension();

    NaiveBayesModel model;
    model.catalog_version = s.catalog_version;
    model.feature_names = s.feature_names;
    model.alpha = alpha;
    const double k = static_cast<double>(s.size());
    model.malware_prior = static_cast<double>(s.malware_count) / k;
    model.benign_prior = static_cast<double>(s.benign_count) / k;

    std::vector<double> malware_ones(n, 0.0), benign_ones(n, 0.0);
    for (const auto& vec : s.vectors) {
        auto& ones = *vec.label == Label::Malware ? malware_ones : benign_ones;
        for (std::size_t i = 0; i < n; ++i) ones[i] += vec.values[i];
    }
    model.malware_theta.resize(n);
    model.benign_theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        model.malware_theta[i] =
            (malware_ones[i] + alpha) / (static_cast<double>(s.malware_count) + 2.0 * alpha);
        model.benign_theta[i] =
            (benign_ones[i] + alpha) / (static_cast<double>(s.benign_count) + 2.0 * alpha);
    }
    return model;
}

ClassificationResult nb_classify(const NaiveBayesModel& model, const FeatureVector& v) {
    if (v.values.size() != model.dimension())
        throw DataError("nb_classify: vector \"" + v.app_id + "\" has dimension " +
                        std::to_string(v.values.size()) + ", model expects " +
                        std::to_string(model.dimension()));

    double log_malware = std::log(model.malware_prior);
    double log_benign = std::log(model.benign_prior);
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (v.values[i]) {
            log_malware += std::log(model.malware_theta[i]);
            log_benign += std::log(model.benign_theta[i]);
        } else {
            log_malware += std::log(1.0 - model.malware_theta[i]);
            log_benign += std::log(1.0 - model.benign_theta[i]);
        }
    }

    ClassificationResult result;
    result.predicted = log_malware >= log_benign ? Label::Malware : Label::Benign;  // tie: malware
    result.score = std::abs(log_malware - log_benign);
    result.nearest_index = 0;  // no nearest-sample notion
    return result;
}

std::vector<ClassificationResult> nb_classify_batch(const NaiveBayesModel& model,
                                                    const std::vector<FeatureVector>& vs,
                                                    unsigned threads) {
    std::string bad;
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i].values.size() != model.dimension()) {
            if (!bad.empty()) bad += ", ";
            bad += std::to_string(i);
        }
    if (!bad.empty())
        throw DataError("nb_classify: dimension mismatch at input indices [" + bad + "]");

    std::vector<ClassificationResult> out(vs.size());
    parallel_for(vs.size(), threads, [&](std::size_t i) { out[i] = nb_classify(model, vs[i]); });
    return out;
}

std::string format_nb_model(const NaiveBayesModel& model) {
    const auto real_cell = [](double value) {
        char buffer[40];
        std::snprintf(buffer, sizeof(buffer), "%.16e", value);  // 17 significant digits
        return std::string(buffer);
    };
    const auto real_array = [&](const std::vector<double>& values) {
        std::string out = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += ", ";
            out += real_cell(values[i]);
        }
        return out + "]";
    };
    const auto quoted = [](const std::string& text) { return ordered_json(text).dump(); };

    std::string out = "{\n";
    out += " \"format\": " + quoted(kNaiveBayesModelFormat) + ",\n";
    out += " \"format_version\": " + std::to_string(kNbFormatVersion) + ",\n";
    out += " \"catalog_version\": " + quoted(model.catalog_version) + ",\n";
    out += " \"alpha\": " + real_cell(model.alpha) + ",\n";
    std::string names = "[";
    for (std::size_t i = 0; i < model.feature_names.size(); ++i) {
        if (i) names += ", ";
        names += quoted(model.feature_names[i]);
    }
    out += " \"feature_names\": " + names + "],\n";
    out += " \"malware_prior\": " + real_cell(model.malware_prior) + ",\n";
    out += " \"benign_prior\": " + real_cell(model.benign_prior) + ",\n";
    out += " \"malware_theta\": " + real_array(model.malware_theta) + ",\n";
    out += " \"benign_theta\": " + real_array(model.benign_theta) + "\n";
    out += "}\n";
    return out;
}

NaiveBayesModel parse_nb_model(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model: not valid JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != kNaiveBayesModelFormat)
            throw DataError("model: not a naive-bayes model document");
        if (doc.value("format_version", 0) != kNbFormatVersion)
            throw DataError("model: unsupported format_version");
        NaiveBayesModel m;
        m.catalog_version = doc.value("catalog_version", "");
        m.alpha = doc.at("alpha").get<double>();
        m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
        m.malware_prior = doc.at("malware_prior").get<double>();
        m.benign_prior = doc.at("benign_prior").get<double>();
        m.malware_theta = doc.at("malware_theta").get<std::vector<double>>();
        m.benign_theta = doc.at("benign_theta").get<std::vector<double>>();
        const std::size_t n = m.feature_names.size();
        if (n == 0 || m.malware_theta.size() != n || m.benign_theta.size() != n)
            throw DataError("model: theta length mismatch");
        if (!(m.malware_prior > 0.0) || !(m.benign_prior > 0.0) ||
            std::abs(m.malware_prior + m.benign_prior - 1.0) > 1e-12)
            throw DataError("model: priors must be positive and sum to 1");
        for (const auto& theta : {m.malware_theta, m.benign_theta})
            for (double t : theta)
                if (!(t > 0.0 && t < 1.0)) throw DataError("model: theta outside (0,1)");
        if (!(m.alpha > 0.0)) throw DataError("model: alpha must be > 0");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model: malformed document: ") + e.what());
    }
}

void save_nb_model(const NaiveBayesModel& model, const std::filesystem::path& path) {
    write_text_file_atomic(path, format_nb_model(model));
}

NaiveBayesModel load_nb_model(const std::filesystem::path& path) {
    try {
        return parse_nb_model(read_text_file(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace eigenscan
