#include "eigenscan/extract.hpp"

#include <string_view>

#include "eigenscan/parallel.hpp"

namespace eigenscan {

namespace {

bool matches(const FeatureDefinition& def, const ArtifactBundle& bundle) {
    for (std::size_t d = 0; d < kDocumentRoleCount; ++d) {
        const auto role = static_cast<DocumentRole>(d);
        if (!def.scope.contains(role)) continue;
        const std::string& doc = bundle.documents[d];
        if (doc.empty()) continue;
        for (const auto& pattern : def.patterns)
            if (std::string_view(doc).find(pattern) != std::string_view::npos) return true;
    }
    return false;
}

}  // namespace

FeatureVector extract(const ArtifactBundle& bundle, const FeatureCatalog& catalog) {
    FeatureVector vec;
    vec.app_id = bundle.app_id;
    vec.values.reserve(catalog.size());
    for (const auto& def : catalog.entries())
        vec.values.push_back(matches(def, bundle) ? 1 : 0);
    return vec;
}

std::vector<FeatureVector> extract_batch(const std::vector<ArtifactBundle>& bundles,
                                         const FeatureCatalog& catalog, unsigned threads) {
    std::vector<FeatureVector> out(bundles.size());
    parallel_for(bundles.size(), threads,
                 [&](std::size_t i) { out[i] = extract(bundles[i], catalog); });
    return out;
}

}  // namespace eigenscan
