#ifndef EIGENSCAN_GAIN_RATIO_HPP
#define EIGENSCAN_GAIN_RATIO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eigenscan/catalog.hpp"
#include "eigenscan/dataset.hpp"
#include "eigenscan/feature_vector.hpp"

namespace eigenscan {

/// Information gain of the feature about the class divided by the feature's
/// own entropy, both in bits. A constant feature scores 0 by convention.
/// Throws DataError on length mismatch.
double gain_ratio(std::span<const std::uint8_t> feature, std::span<const Label> labels);

struct RankedFeature {
    std::string name;
    double score = 0.0;
    std::size_t catalog_index = 0;  // position in the original order
};

/// Non-increasing by score; ties keep original catalog order.
using RankedFeatures = std::vector<RankedFeature>;

/// Scores every feature of a labeled dataset. Throws DataError when the
/// dataset is empty, unlabeled, or single-class.
RankedFeatures rank_features(const Dataset& dataset);

/// Keeps the k best-ranked features; the ranked order becomes the new index
/// order and every vector is projected accordingly. Throws DataError for k
/// outside [1, N].
Dataset select_top(const RankedFeatures& ranked, std::size_t k, const Dataset& dataset);
FeatureCatalog select_top(const RankedFeatures& ranked, std::size_t k,
                          const FeatureCatalog& catalog);

}  // namespace eigenscan

#endif
