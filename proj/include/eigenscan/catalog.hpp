#ifndef EIGENSCAN_CATALOG_HPP
#define EIGENSCAN_CATALOG_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace eigenscan {

enum class FeatureKind { Permission, Api, Intent, CommandRelated };

const char* to_string(FeatureKind kind);

// Decoded text artifacts of one application. Roles map onto the files an
// upstream unpacker produces: the decoded manifest, the disassembled code
// dump, and the concatenated text of other embedded files.
enum class DocumentRole { Manifest, CodeDump, EmbeddedFiles };

inline constexpr std::size_t kDocumentRoleCount = 3;

const char* to_string(DocumentRole role);

// The set of documents a feature's patterns are searched in.
class Scope {
public:
    Scope() = default;

    static Scope only(DocumentRole role) { return Scope{mask_of(role)}; }
    static Scope all() { return Scope{(1u << kDocumentRoleCount) - 1u}; }

    Scope& add(DocumentRole role) {
        bits_ |= mask_of(role);
        return *this;
    }

    bool contains(DocumentRole role) const { return (bits_ & mask_of(role)) != 0; }
    bool empty() const { return bits_ == 0; }
    bool operator==(const Scope&) const = default;

private:
    explicit Scope(unsigned bits) : bits_(bits) {}
    static unsigned mask_of(DocumentRole role) { return 1u << static_cast<unsigned>(role); }

    unsigned bits_ = 0;
};

struct FeatureDefinition {
    std::string name;
    FeatureKind kind = FeatureKind::Permission;
    std::vector<std::string> patterns;  // literal substrings, at least one
    Scope scope;
};

/// Ordered list of named binary features. Order is significant: entry i
/// defines vector index i.
class FeatureCatalog {
public:
    // Validates: at least one entry, unique names, nonempty patterns and
    // nonempty scope per entry. Throws DataError.
    FeatureCatalog(std::string version, std::vector<FeatureDefinition> entries);

    const std::string& version() const { return version_; }
    const std::vector<FeatureDefinition>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    std::vector<std::string> feature_names() const;

private:
    std::string version_;
    std::vector<FeatureDefinition> entries_;
};

FeatureCatalog parse_catalog(const std::string& json_text);
FeatureCatalog load_catalog(const std::filesystem::path& path);
std::string format_catalog(const FeatureCatalog& catalog);
void save_catalog(const FeatureCatalog& catalog, const std::filesystem::path& path);

/// The built-in 100-feature catalog (permission, API, intent and
/// command-related keywords). A copy ships as data/default-catalog.json.
const FeatureCatalog& default_catalog();

}  // namespace eigenscan

#endif
