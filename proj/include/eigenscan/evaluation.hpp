#ifndef EIGENSCAN_EVALUATION_HPP
#define EIGENSCAN_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "eigenscan/classifier.hpp"
#include "eigenscan/dataset.hpp"
#include "eigenscan/feature_vector.hpp"

namespace eigenscan {

/// Malware is the positive class throughout.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;
};

struct MetricsRow {
    double tpr = 0, fpr = 0, tnr = 0, fnr = 0, acc = 0, err = 0;
};

/// TPR = TP/(TP+FN), TNR = TN/(TN+FP), FPR = FP/(FP+TN), FNR = FN/(FN+TP),
/// ACC = (TP+TN)/total, ERR = 1-ACC. Throws DataError when either class is
/// empty.
MetricsRow compute_metrics(const ConfusionCounts& c);

/// Stratified partition into k disjoint test folds; per-class fold sizes
/// differ by at most one. Fold assignment: each class's index list is
/// Fisher-Yates shuffled (malware first, one shared Rng stream) and split
/// into k contiguous chunks, the first (size mod k) chunks one element
/// longer.
struct FoldPlan {
    std::size_t fold_count = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::size_t>> test_folds;  // ascending within a fold
};

FoldPlan make_folds(const std::vector<Label>& labels, std::size_t k, std::uint64_t seed);

enum class Algorithm { Eigenspace, NaiveBayes };

const char* to_string(Algorithm algorithm);

struct FoldResult {
    ConfusionCounts counts;
    MetricsRow metrics;
};

struct EvaluationReport {
    Algorithm algorithm = Algorithm::Eigenspace;
    std::size_t fold_count = 0;
    std::uint64_t seed = 0;
    double variance_threshold = 0.0;
    std::vector<FoldResult> folds;
    MetricsRow mean;          // unweighted mean of the per-fold ratios
    ConfusionCounts pooled;   // summed counts across folds
};

/// For each fold: train on the complement, classify the fold, count the
/// confusions. Deterministic given (dataset, k, seed, threshold).
EvaluationReport cross_validate(const Dataset& dataset, std::size_t k, std::uint64_t seed,
                                double variance_threshold, Algorithm algorithm,
                                double nb_alpha = 1.0, unsigned threads = 1);

// Report CSV: one row per fold plus a "mean" row whose count cells are the
// pooled totals and whose ratio cells are the fold means.
std::string format_report_csv(const EvaluationReport& report);

/// One test sample mapped to its nearest training sample, the scatter data
/// behind a test-vs-training index plot. Quadrant membership (correct /
/// false positive / false negative) follows from the two labels.
struct MappingRecord {
    std::size_t test_index = 0;   // 1-based position in the test set
    std::size_t train_index = 0;  // 1-based training column (malware block first)
    double score = 0.0;
    Label test_label = Label::Benign;
    Label train_label = Label::Benign;
};

/// One record per test sample, in test order. Requires labeled test
/// vectors of the model's dimension.
std::vector<MappingRecord> export_mapping(const EigenspaceModel& model,
                                          const std::vector<FeatureVector>& test_set);

std::string format_mapping_csv(const std::vector<MappingRecord>& records);

/// Tallies records into confusion counts (test label = actual, train label
/// = predicted).
ConfusionCounts mapping_confusion(const std::vector<MappingRecord>& records);

}  // namespace eigenscan

#endif
