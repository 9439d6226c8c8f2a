#include "eigenscan/feature_vector.hpp"

namespace eigenscan {

const char* to_string(Label label) {
    return label == Label::Malware ? "malware" : "benign";
}

std::optional<Label> parse_label(const std::string& text) {
    if (text == "malware") return Label::Malware;
    if (text == "benign") return Label::Benign;
    return std::nullopt;
}

}  // namespace eigenscan
