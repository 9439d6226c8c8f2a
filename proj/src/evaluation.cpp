#include "eigenscan/evaluation.hpp"

#include <algorithm>
#include <cstdio>

#include "eigenscan/errors.hpp"
#include "eigenscan/io_util.hpp"
#include "eigenscan/naive_bayes.hpp"
#include "eigenscan/rng.hpp"

namespace eigenscan {

namespace {

void tally(ConfusionCounts& counts, Label actual, Label predicted) {
    if (actual == Label::Malware) {
        if (predicted == Label::Malware)
            ++counts.tp;
        else
            ++counts.fn;
    } else {
        if (predicted == Label::Benign)
            ++counts.tn;
        else
            ++counts.fp;
    }
}

std::string metrics_cells(const MetricsRow& m) {
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer), "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f", m.tpr, m.fpr, m.tnr,
                  m.fnr, m.acc, m.err);
    return buffer;
}

}  // namespace

const char* to_string(Algorithm algorithm) {
    return algorithm == Algorithm::Eigenspace ? "eigenspace" : "nb";
}

MetricsRow compute_metrics(const ConfusionCounts& c) {
    const double positives = static_cast<double>(c.tp + c.fn);
    const double negatives = static_cast<double>(c.tn + c.fp);
    if (positives == 0.0 || negatives == 0.0)
        throw DataError("metrics: need at least one sample of each class");
    MetricsRow row;
    row.tpr = static_cast<double>(c.tp) / positives;
    row.fnr = static_cast<double>(c.fn) / positives;
    row.tnr = static_cast<double>(c.tn) / negatives;
    row.fpr = static_cast<double>(c.fp) / negatives;
    row.acc = static_cast<double>(c.tp + c.tn) / (positives + negatives);
    row.err = 1.0 - row.acc;
    return row;
}

FoldPlan make_folds(const std::vector<Label>& labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw DataError("folds: k must be >= 2");
    std::vector<std::size_t> malware, benign;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == Label::Malware ? malware : benign).push_back(i);
    for (const auto* cls : {&malware, &benign})
        if (cls->size() < k)
            throw DataError("folds: class with " + std::to_string(cls->size()) +
                            " samples cannot be split into " + std::to_string(k) + " folds");

    Rng rng(seed);
    rng.shuffle(malware);
    rng.shuffle(benign);

    FoldPlan plan;
    plan.fold_count = k;
    plan.seed = seed;
    plan.test_folds.assign(k, {});
    auto deal = [&](const std::vector<std::size_t>& shuffled) {
        const std::size_t base = shuffled.size() / k;
        const std::size_t extra = shuffled.size() % k;
        std::size_t offset = 0;
        for (std::size_t f = 0; f < k; ++f) {
            const std::size_t take = base + (f < extra ? 1 : 0);
            plan.test_folds[f].insert(plan.test_folds[f].end(), shuffled.begin() + offset,
                                      shuffled.begin() + offset + take);
            offset += take;
        }
    };
    deal(malware);
    deal(benign);
    for (auto& fold : plan.test_folds) std::sort(fold.begin(), fold.end());
    return plan;
}

EvaluationReport cross_validate(const Dataset& dataset, std::size_t k, std::uint64_t seed,
                                double variance_threshold, Algorithm algorithm, double nb_alpha,
                                unsigned threads) {
    if (!dataset.labeled) throw DataError("crossval: dataset has no labels");
    std::vector<Label> labels;
    labels.reserve(dataset.size());
    for (const auto& vec : dataset.vectors) labels.push_back(*vec.label);
    const FoldPlan plan = make_folds(labels, k, seed);

    EvaluationReport report;
    report.algorithm = algorithm;
    report.fold_count = k;
    report.seed = seed;
    report.variance_threshold = variance_threshold;

    std::vector<char> in_test(dataset.size());
    for (const auto& fold : plan.test_folds) {
        std::fill(in_test.begin(), in_test.end(), 0);
        for (auto idx : fold) in_test[idx] = 1;

        Dataset training;
        training.labeled = true;
        training.feature_names = dataset.feature_names;
        for (std::size_t i = 0; i < dataset.size(); ++i)
            if (!in_test[i]) training.vectors.push_back(dataset.vectors[i]);
        const TrainingSet training_set = TrainingSet::from_dataset(training);

        std::vector<FeatureVector> test;
        test.reserve(fold.size());
        for (auto idx : fold) test.push_back(dataset.vectors[idx]);

        std::vector<ClassificationResult> results;
        if (algorithm == Algorithm::Eigenspace) {
            const EigenspaceModel model = train(training_set, variance_threshold);
            results = classify_batch(model, test, threads);
        } else {
            const NaiveBayesModel model = nb_train(training_set, nb_alpha);
            results = nb_classify_batch(model, test, threads);
        }

        FoldResult fold_result;
        for (std::size_t i = 0; i < test.size(); ++i)
            tally(fold_result.counts, *test[i].label, results[i].predicted);
        fold_result.metrics = compute_metrics(fold_result.counts);
        report.folds.push_back(fold_result);
    }

    for (const auto& fold : report.folds) {
        report.pooled.tp += fold.counts.tp;
        report.pooled.fp += fold.counts.fp;
        report.pooled.tn += fold.counts.tn;
        report.pooled.fn += fold.counts.fn;
        report.mean.tpr += fold.metrics.tpr;
        report.mean.fpr += fold.metrics.fpr;
        report.mean.tnr += fold.metrics.tnr;
        report.mean.fnr += fold.metrics.fnr;
        report.mean.acc += fold.metrics.acc;
        report.mean.err += fold.metrics.err;
    }
    const double folds = static_cast<double>(report.folds.size());
    report.mean.tpr /= folds;
    report.mean.fpr /= folds;
    report.mean.tnr /= folds;
    report.mean.fnr /= folds;
    report.mean.acc /= folds;
    report.mean.err /= folds;
    return report;
}

std::string format_report_csv(const EvaluationReport& report) {
    std::string out = "fold,tp,fp,tn,fn,tpr,fpr,tnr,fnr,acc,err\n";
    for (std::size_t f = 0; f < report.folds.size(); ++f) {
        const auto& fold = report.folds[f];
        out += std::to_string(f + 1);
        out += ',' + std::to_string(fold.counts.tp) + ',' + std::to_string(fold.counts.fp) + ',' +
               std::to_string(fold.counts.tn) + ',' + std::to_string(fold.counts.fn);
        out += ',' + metrics_cells(fold.metrics) + '\n';
    }
    // count cells of the mean row are the pooled totals; ratio cells are the
    // unweighted fold means
    out += "mean";
    out += ',' + std::to_string(report.pooled.tp) + ',' + std::to_string(report.pooled.fp) + ',' +
           std::to_string(report.pooled.tn) + ',' + std::to_string(report.pooled.fn);
    out += ',' + metrics_cells(report.mean) + '\n';
    return out;
}

std::vector<MappingRecord> export_mapping(const EigenspaceModel& model,
                                          const std::vector<FeatureVector>& test_set) {
    std::vector<MappingRecord> records;
    records.reserve(test_set.size());
    for (std::size_t i = 0; i < test_set.size(); ++i) {
        const auto& vec = test_set[i];
        if (!vec.label)
            throw DataError("mapping: test vector \"" + vec.app_id + "\" has no label");
        const ClassificationResult result = classify(model, vec);
        MappingRecord record;
        record.test_index = i + 1;
        record.train_index = result.nearest_index;
        record.score = result.score;
        record.test_label = *vec.label;
        record.train_label = result.predicted;
        records.push_back(record);
    }
    return records;
}

std::string format_mapping_csv(const std::vector<MappingRecord>& records) {
    std::string out = "test_index,train_index,score,test_label,train_label\n";
    for (const auto& r : records) {
        out += std::to_string(r.test_index);
        out += ',' + std::to_string(r.train_index);
        out += ',' + format_double(r.score);
        out += ',';
        out += to_string(r.test_label);
        out += ',';
        out += to_string(r.train_label);
        out += '\n';
    }
    return out;
}

ConfusionCounts mapping_confusion(const std::vector<MappingRecord>& records) {
    ConfusionCounts counts;
    for (const auto& r : records) tally(counts, r.test_label, r.train_label);
    return counts;
}

}  // namespace eigenscan
