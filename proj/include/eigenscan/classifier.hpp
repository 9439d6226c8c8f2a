#ifndef EIGENSCAN_CLASSIFIER_HPP
#define EIGENSCAN_CLASSIFIER_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "eigenscan/dataset.hpp"
#include "eigenscan/eigenspace.hpp"
#include "eigenscan/feature_vector.hpp"
#include "eigenscan/matrix.hpp"

namespace eigenscan {

/// Labeled vectors normalized to malware-first order, so the index
/// threshold rule (nearest index <= malware_count => malware) is well
/// defined. The constructor performs the reordering; it is stable within
/// each class.
struct TrainingSet {
    std::vector<std::string> feature_names;
    std::string catalog_version;
    std::vector<FeatureVector> vectors;  // malware block, then benign block
    std::size_t malware_count = 0;
    std::size_t benign_count = 0;

    // Requires every vector labeled and both classes present.
    static TrainingSet from_dataset(const Dataset& dataset, std::string catalog_version = {});

    std::size_t size() const { return vectors.size(); }
    std::size_t dimension() const { return feature_names.size(); }
};

struct EigenspaceModel {
    std::string catalog_version;
    std::vector<std::string> feature_names;   // N
    std::vector<double> mean;                 // N
    std::vector<double> eigenvalues;          // N', descending
    Matrix basis;                             // N x N', eigenvector columns
    Matrix weights;                           // N' x K, one column per sample
    std::vector<Label> labels;                // K, malware block first
    std::vector<std::string> app_ids;         // K
    std::size_t malware_threshold = 0;        // count of malware columns
    double variance_threshold = 0.0;

    std::size_t dimension() const { return mean.size(); }
    std::size_t sample_count() const { return labels.size(); }
    std::size_t subspace_dimension() const { return eigenvalues.size(); }
};

struct ClassificationResult {
    Label predicted = Label::Benign;
    double score = 0.0;            // Euclidean distance to the nearest weight column
    std::size_t nearest_index = 0; // 1-based training index; 0 when not applicable
    std::string nearest_app_id;
};

/// Steps: mean, centering, covariance eigenvectors, variance-threshold
/// truncation, projection of every training sample. Throws DegeneracyError
/// when all vectors are identical (zero covariance).
EigenspaceModel train(const TrainingSet& s, double variance_threshold);

/// Projects v - mean into the basis and scores it against every weight
/// column. Nearest index picks the smallest index among columns whose
/// squared distance is within 1e-9 * max(1, d2_min) of the minimum, so that
/// mathematically tied columns resolve deterministically instead of by
/// floating-point noise. Malware iff nearest index <= malware_threshold.
ClassificationResult classify(const EigenspaceModel& model, const FeatureVector& v);

/// Element-wise classify, order preserved. Dimension errors are collected
/// and reported with their input indices before anything is classified.
std::vector<ClassificationResult> classify_batch(const EigenspaceModel& model,
                                                 const std::vector<FeatureVector>& vs,
                                                 unsigned threads = 1);

// Versioned JSON model document. Numbers round-trip bit-exactly on one
// platform.
std::string format_model(const EigenspaceModel& model);
EigenspaceModel parse_model(const std::string& json_text);
void save_model(const EigenspaceModel& model, const std::filesystem::path& path);
EigenspaceModel load_model(const std::filesystem::path& path);

/// Reads just the "format" field of a model document, e.g. to dispatch
/// between eigenspace and naive-bayes files. Throws DataError if the file
/// is not a model document.
std::string model_format(const std::filesystem::path& path);

inline constexpr const char* kEigenspaceModelFormat = "eigenscan-eigenspace-model";
inline constexpr const char* kNaiveBayesModelFormat = "eigenscan-naive-bayes-model";

}  // namespace eigenscan

#endif
