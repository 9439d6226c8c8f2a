#ifndef EIGENSCAN_FEATURE_VECTOR_HPP
#define EIGENSCAN_FEATURE_VECTOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eigenscan {

enum class Label { Malware, Benign };

const char* to_string(Label label);

// Returns nullopt for anything other than "malware" / "benign".
std::optional<Label> parse_label(const std::string& text);

/// Binary characterization of one application: entry i is 1 iff feature i
/// of the catalog matched. Length always equals the catalog size.
struct FeatureVector {
    std::string app_id;
    std::vector<std::uint8_t> values;  // each entry is 0 or 1
    std::optional<Label> label;

    bool operator==(const FeatureVector&) const = default;
};

}  // namespace eigenscan

#endif
