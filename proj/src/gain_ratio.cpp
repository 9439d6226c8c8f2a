#include "eigenscan/gain_ratio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "eigenscan/errors.hpp"

namespace eigenscan {

namespace {

// Entropy in bits of a two-way split; 0 log 0 = 0.
double entropy2(double count_a, double count_b) {
    const double total = count_a + count_b;
    if (total == 0.0) return 0.0;
    double h = 0.0;
    for (double count : {count_a, count_b}) {
        if (count == 0.0) continue;
        const double p = count / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

double gain_ratio(std::span<const std::uint8_t> feature, std::span<const Label> labels) {
    if (feature.size() != labels.size())
        throw DataError("gain_ratio: feature column has " + std::to_string(feature.size()) +
                        " values, labels " + std::to_string(labels.size()));
    if (feature.empty()) throw DataError("gain_ratio: empty input");

    // counts[value][class], class 0 = malware
    std::array<std::array<double, 2>, 2> counts{{{0.0, 0.0}, {0.0, 0.0}}};
    for (std::size_t i = 0; i < feature.size(); ++i)
        counts[feature[i] ? 1 : 0][labels[i] == Label::Malware ? 0 : 1] += 1.0;

    const double total = static_cast<double>(feature.size());
    const double class_entropy =
        entropy2(counts[0][0] + counts[1][0], counts[0][1] + counts[1][1]);

    double conditional = 0.0;
    for (const auto& row : counts) {
        const double weight = (row[0] + row[1]) / total;
        conditional += weight * entropy2(row[0], row[1]);
    }
    const double information_gain = class_entropy - conditional;

    const double split_entropy = entropy2(counts[0][0] + counts[0][1],
                                          counts[1][0] + counts[1][1]);
    if (split_entropy == 0.0) return 0.0;  // constant feature
    return information_gain / split_entropy;
}

RankedFeatures rank_features(const Dataset& dataset) {
    if (dataset.vectors.empty()) throw DataError("rank: empty dataset");
    if (!dataset.labeled) throw DataError("rank: dataset has no labels");

    std::vector<Label> labels;
    labels.reserve(dataset.size());
    for (const auto& vec : dataset.vectors) labels.push_back(*vec.label);
    const bool has_malware = std::find(labels.begin(), labels.end(), Label::Malware) != labels.end();
    const bool has_benign = std::find(labels.begin(), labels.end(), Label::Benign) != labels.end();
    if (!has_malware || !has_benign)
        throw DataError("rank: both classes must be present");

    const std::size_t n = dataset.dimension();
    RankedFeatures ranked;
    ranked.reserve(n);
    std::vector<std::uint8_t> column(dataset.size());
    for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t i = 0; i < dataset.size(); ++i) column[i] = dataset.vectors[i].values[f];
        ranked.push_back({dataset.feature_names[f], gain_ratio(column, labels), f});
    }
    // Stable: equal scores keep catalog order.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedFeature& a, const RankedFeature& b) { return a.score > b.score; });
    return ranked;
}

namespace {

std::vector<std::size_t> top_indices(const RankedFeatures& ranked, std::size_t k,
                                     std::size_t dimension) {
    if (ranked.size() != dimension)
        throw DataError("select_top: ranking has " + std::to_string(ranked.size()) +
                        " entries, input has " + std::to_string(dimension) + " features");
    if (k < 1 || k > dimension)
        throw DataError("select_top: k = " + std::to_string(k) + " outside [1, " +
                        std::to_string(dimension) + "]");
    std::vector<std::size_t> indices;
    indices.reserve(k);
    for (std::size_t r = 0; r < k; ++r) indices.push_back(ranked[r].catalog_index);
    return indices;
}

}  // namespace

Dataset select_top(const RankedFeatures& ranked, std::size_t k, const Dataset& dataset) {
    const auto indices = top_indices(ranked, k, dataset.dimension());
    Dataset out;
    out.labeled = dataset.labeled;
    out.feature_names.reserve(k);
    for (auto idx : indices) out.feature_names.push_back(dataset.feature_names[idx]);
    out.vectors.reserve(dataset.size());
    for (const auto& vec : dataset.vectors) {
        FeatureVector projected;
        projected.app_id = vec.app_id;
        projected.label = vec.label;
        projected.values.reserve(k);
        for (auto idx : indices) projected.values.push_back(vec.values[idx]);
        out.vectors.push_back(std::move(projected));
    }
    return out;
}

FeatureCatalog select_top(const RankedFeatures& ranked, std::size_t k,
                          const FeatureCatalog& catalog) {
    const auto indices = top_indices(ranked, k, catalog.size());
    std::vector<FeatureDefinition> entries;
    entries.reserve(k);
    for (auto idx : indices) entries.push_back(catalog.entries()[idx]);
    return FeatureCatalog(catalog.version(), std::move(entries));
}

}  // namespace eigenscan
