#ifndef EIGENSCAN_DATASET_HPP
#define EIGENSCAN_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eigenscan/catalog.hpp"
#include "eigenscan/feature_vector.hpp"

namespace eigenscan {

/// In-memory form of a dataset CSV: a header of feature names and one
/// row per application. Either every vector is labeled or none is.
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<FeatureVector> vectors;
    bool labeled = false;

    std::size_t dimension() const { return feature_names.size(); }
    std::size_t size() const { return vectors.size(); }
};

// Dataset CSV, defined bit-exactly:
//   - comma delimiter, no quoting; cells must not contain ',', CR or LF
//   - LF line endings (a lone trailing CR per line is tolerated on read)
//   - header row: app_id,<feature names...>[,label]
//   - value cells are exactly "0" or "1"; label cells "malware" or "benign"
//   - the file ends with a newline
// Errors carry row/column locations. When `expected` is given, the header
// names must equal the catalog names in order.
Dataset parse_dataset(const std::string& csv_text, const FeatureCatalog* expected = nullptr);
Dataset read_dataset(const std::filesystem::path& path, const FeatureCatalog* expected = nullptr);

std::string format_dataset(const Dataset& dataset);
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Two-class Bernoulli generator standing in for a real corpus. Feature i
/// of a class-c sample is an independent draw with that class's probability
/// for feature i. The default profile puts the malware class at 0.5+delta
/// and the benign class at 0.5-delta on the first `informative_count`
/// features, 0.5 elsewhere.
struct SyntheticSpec {
    std::size_t feature_count = 100;
    std::size_t malware_count = 500;
    std::size_t benign_count = 500;
    std::size_t informative_count = 30;
    double delta = 0.35;
    std::uint64_t seed = 42;

    // When nonempty these override the delta profile; both must have
    // feature_count entries in [0,1].
    std::vector<double> malware_probs;
    std::vector<double> benign_probs;
};

/// Deterministic per seed (see rng.hpp for the exact draw sequence: one
/// unit-double per sample x feature, malware rows first, features in index
/// order). Rows are labeled, malware block first, app ids mal00001...,
/// ben00001... Throws DataError on an invalid spec.
Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace eigenscan

#endif
