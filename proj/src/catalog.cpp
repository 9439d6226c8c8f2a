#include "eigenscan/catalog.hpp"

#include <unordered_set>
#include <utility>

#include "json.hpp"

#include "eigenscan/errors.hpp"
#include "eigenscan/io_util.hpp"

namespace eigenscan {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kCatalogFormat = "eigenscan-catalog";
constexpr int kCatalogFormatVersion = 1;

FeatureKind parse_kind(const std::string& text) {
    if (text == "permission") return FeatureKind::Permission;
    if (text == "api") return FeatureKind::Api;
    if (text == "intent") return FeatureKind::Intent;
    if (text == "command-related") return FeatureKind::CommandRelated;
    throw DataError("catalog: unknown feature kind \"" + text + "\"");
}

DocumentRole parse_role(const std::string& text) {
    if (text == "manifest") return DocumentRole::Manifest;
    if (text == "code-dump") return DocumentRole::CodeDump;
    if (text == "embedded-files") return DocumentRole::EmbeddedFiles;
    throw DataError("catalog: unknown scope \"" + text + "\"");
}

Scope parse_scope(const ordered_json& value) {
    if (value.is_string()) {
        const auto text = value.get<std::string>();
        if (text == "all") return Scope::all();
        return Scope::only(parse_role(text));
    }
    if (value.is_array()) {
        Scope scope;
        for (const auto& item : value) scope.add(parse_role(item.get<std::string>()));
        return scope;
    }
    throw DataError("catalog: scope must be a string or an array of strings");
}

ordered_json scope_to_json(const Scope& scope) {
    if (scope == Scope::all()) return "all";
    ordered_json roles = ordered_json::array();
    for (auto role : {DocumentRole::Manifest, DocumentRole::CodeDump, DocumentRole::EmbeddedFiles})
        if (scope.contains(role)) roles.push_back(to_string(role));
    if (roles.size() == 1) return roles.front();
    return roles;
}

}  // namespace

const char* to_string(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Permission: return "permission";
        case FeatureKind::Api: return "api";
        case FeatureKind::Intent: return "intent";
        case FeatureKind::CommandRelated: return "command-related";
    }
    return "?";
}

const char* to_string(DocumentRole role) {
    switch (role) {
        case DocumentRole::Manifest: return "manifest";
        case DocumentRole::CodeDump: return "code-dump";
        case DocumentRole::EmbeddedFiles: return "embedded-files";
    }
    return "?";
}

FeatureCatalog::FeatureCatalog(std::string version, std::vector<FeatureDefinition> entries)
    : version_(std::move(version)), entries_(std::move(entries)) {
    if (entries_.empty()) throw DataError("catalog: no entries");
    std::unordered_set<std::string> seen;
    for (const auto& entry : entries_) {
        if (entry.name.empty()) throw DataError("catalog: empty feature name");
        if (!seen.insert(entry.name).second)
            throw DataError("catalog: duplicate feature name \"" + entry.name + "\"");
        if (entry.patterns.empty())
            throw DataError("catalog: feature \"" + entry.name + "\" has no patterns");
        for (const auto& p : entry.patterns)
            if (p.empty())
                throw DataError("catalog: feature \"" + entry.name + "\" has an empty pattern");
        if (entry.scope.empty())
            throw DataError("catalog: feature \"" + entry.name + "\" has an empty scope");
    }
}

std::vector<std::string> FeatureCatalog::feature_names() const {
    std::vector<std::string> names;
    names.reserve(entries_.size());
    for (const auto& entry : entries_) names.push_back(entry.name);
    return names;
}

FeatureCatalog parse_catalog(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("catalog: not valid JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != kCatalogFormat)
            throw DataError("catalog: missing or wrong \"format\" field");
        if (doc.value("format_version", 0) != kCatalogFormatVersion)
            throw DataError("catalog: unsupported format_version");
        std::vector<FeatureDefinition> entries;
        for (const auto& item : doc.at("entries")) {
            FeatureDefinition def;
            def.name = item.at("name").get<std::string>();
            def.kind = parse_kind(item.at("kind").get<std::string>());
            def.patterns = item.at("patterns").get<std::vector<std::string>>();
            def.scope = parse_scope(item.at("scope"));
            entries.push_back(std::move(def));
        }
        return FeatureCatalog(doc.value("version", ""), std::move(entries));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("catalog: malformed document: ") + e.what());
    }
}

FeatureCatalog load_catalog(const std::filesystem::path& path) {
    return parse_catalog(read_text_file(path));
}

std::string format_catalog(const FeatureCatalog& catalog) {
    ordered_json doc;
    doc["format"] = kCatalogFormat;
    doc["format_version"] = kCatalogFormatVersion;
    doc["version"] = catalog.version();
    doc["entries"] = ordered_json::array();
    for (const auto& entry : catalog.entries()) {
        ordered_json item;
        item["name"] = entry.name;
        item["kind"] = to_string(entry.kind);
        item["scope"] = scope_to_json(entry.scope);
        item["patterns"] = entry.patterns;
        doc["entries"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

void save_catalog(const FeatureCatalog& catalog, const std::filesystem::path& path) {
    write_text_file_atomic(path, format_catalog(catalog));
}

}  // namespace eigenscan
