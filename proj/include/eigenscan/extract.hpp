#ifndef EIGENSCAN_EXTRACT_HPP
#define EIGENSCAN_EXTRACT_HPP

#include <array>
#include <string>
#include <vector>

#include "eigenscan/catalog.hpp"
#include "eigenscan/feature_vector.hpp"

namespace eigenscan {

/// Decoded text artifacts of one application. A missing document is the
/// empty string.
struct ArtifactBundle {
    std::string app_id;
    std::array<std::string, kDocumentRoleCount> documents;

    std::string& document(DocumentRole role) { return documents[static_cast<std::size_t>(role)]; }
    const std::string& document(DocumentRole role) const {
        return documents[static_cast<std::size_t>(role)];
    }
};

/// Entry i of the result is 1 iff any pattern of catalog entry i occurs as a
/// case-sensitive substring of any in-scope document. Total: never fails.
FeatureVector extract(const ArtifactBundle& bundle, const FeatureCatalog& catalog);

/// Element-wise extract; output order equals input order regardless of the
/// thread count.
std::vector<FeatureVector> extract_batch(const std::vector<ArtifactBundle>& bundles,
                                         const FeatureCatalog& catalog, unsigned threads = 1);

}  // namespace eigenscan

#endif
