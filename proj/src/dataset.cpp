#include "eigenscan/dataset.hpp"

#include <cstdio>
#include <string_view>
#include <unordered_set>

#include "eigenscan/errors.hpp"
#include "eigenscan/io_util.hpp"
#include "eigenscan/rng.hpp"

namespace eigenscan {

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

void check_cell_text(const std::string& text, const char* what) {
    if (text.empty()) throw DataError(std::string(what) + " is empty");
    if (text.find_first_of(",\r\n") != std::string::npos)
        throw DataError(std::string(what) + " \"" + text + "\" contains a comma or line break");
}

std::string zero_padded(std::size_t value, int width) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%0*zu", width, value);
    return buffer;
}

}  // namespace

Dataset parse_dataset(const std::string& csv_text, const FeatureCatalog* expected) {
    Dataset ds;
    std::string_view rest(csv_text);
    std::size_t line_no = 0;

    auto next_line = [&](std::string_view& out) -> bool {
        if (rest.empty()) return false;
        const auto nl = rest.find('\n');
        if (nl == std::string_view::npos) {
            out = rest;
            rest = {};
        } else {
            out = rest.substr(0, nl);
            rest.remove_prefix(nl + 1);
        }
        if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header) || header.empty()) throw DataError("dataset: missing header row");
    auto header_cells = split_line(header);
    if (header_cells.size() < 2 || header_cells[0] != "app_id")
        throw DataError("dataset: header must start with app_id and at least one feature");
    ds.labeled = header_cells.back() == "label";
    const std::size_t n = header_cells.size() - 1 - (ds.labeled ? 1 : 0);
    if (n == 0) throw DataError("dataset: header has no feature columns");
    for (std::size_t i = 1; i <= n; ++i) {
        if (header_cells[i].empty())
            throw DataError("dataset: empty feature name in header column " + std::to_string(i + 1));
        ds.feature_names.emplace_back(header_cells[i]);
    }

    if (expected) {
        const auto names = expected->feature_names();
        if (names != ds.feature_names)
            throw DataError("dataset: header does not match catalog \"" + expected->version() +
                            "\" (expected " + std::to_string(names.size()) + " features)");
    }

    const std::size_t expected_cells = 1 + n + (ds.labeled ? 1 : 0);
    std::unordered_set<std::string> ids;
    std::string_view line;
    while (next_line(line)) {
        if (line.empty())
            throw DataError("dataset: empty row at line " + std::to_string(line_no));
        const auto cells = split_line(line);
        if (cells.size() != expected_cells)
            throw DataError("dataset: row " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(expected_cells));
        FeatureVector vec;
        vec.app_id = std::string(cells[0]);
        if (vec.app_id.empty())
            throw DataError("dataset: row " + std::to_string(line_no) + " has an empty app id");
        vec.values.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto cell = cells[i + 1];
            if (cell == "0")
                vec.values.push_back(0);
            else if (cell == "1")
                vec.values.push_back(1);
            else
                throw DataError("dataset: non-binary value \"" + std::string(cell) + "\" at row " +
                                std::to_string(line_no) + ", column " + std::to_string(i + 2));
        }
        if (ds.labeled) {
            const auto label = parse_label(std::string(cells.back()));
            if (!label)
                throw DataError("dataset: bad label \"" + std::string(cells.back()) + "\" at row " +
                                std::to_string(line_no));
            vec.label = label;
        }
        if (!ids.insert(vec.app_id).second)
            throw DataError("dataset: duplicate app id \"" + vec.app_id + "\" at row " +
                            std::to_string(line_no));
        ds.vectors.push_back(std::move(vec));
    }
    return ds;
}

Dataset read_dataset(const std::filesystem::path& path, const FeatureCatalog* expected) {
    try {
        return parse_dataset(read_text_file(path), expected);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::string format_dataset(const Dataset& dataset) {
    std::string out = "app_id";
    for (const auto& name : dataset.feature_names) {
        check_cell_text(name, "dataset: feature name");
        out += ',';
        out += name;
    }
    if (dataset.labeled) out += ",label";
    out += '\n';
    for (const auto& vec : dataset.vectors) {
        check_cell_text(vec.app_id, "dataset: app id");
        if (vec.values.size() != dataset.feature_names.size())
            throw DataError("dataset: vector \"" + vec.app_id + "\" has " +
                            std::to_string(vec.values.size()) + " values, header has " +
                            std::to_string(dataset.feature_names.size()));
        out += vec.app_id;
        for (const auto value : vec.values) {
            if (value > 1) throw DataError("dataset: non-binary value in \"" + vec.app_id + "\"");
            out += value ? ",1" : ",0";
        }
        if (dataset.labeled) {
            if (!vec.label)
                throw DataError("dataset: vector \"" + vec.app_id + "\" is missing its label");
            out += ',';
            out += to_string(*vec.label);
        }
        out += '\n';
    }
    return out;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    write_text_file_atomic(path, format_dataset(dataset));
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.feature_count == 0) throw DataError("synthetic: feature count must be >= 1");
    if (spec.malware_count == 0 || spec.benign_count == 0)
        throw DataError("synthetic: both class counts must be >= 1");

    std::vector<double> malware_probs = spec.malware_probs;
    std::vector<double> benign_probs = spec.benign_probs;
    if (malware_probs.empty() && benign_probs.empty()) {
        if (spec.informative_count > spec.feature_count)
            throw DataError("synthetic: informative count exceeds feature count");
        if (!(spec.delta >= 0.0) || spec.delta > 0.5)
            throw DataError("synthetic: delta must be in [0, 0.5]");
        malware_probs.assign(spec.feature_count, 0.5);
        benign_probs.assign(spec.feature_count, 0.5);
        for (std::size_t i = 0; i < spec.informative_count; ++i) {
            malware_probs[i] = 0.5 + spec.delta;
            benign_probs[i] = 0.5 - spec.delta;
        }
    }
    if (malware_probs.size() != spec.feature_count || benign_probs.size() != spec.feature_count)
        throw DataError("synthetic: probability vectors must have one entry per feature");
    for (const auto& probs : {malware_probs, benign_probs})
        for (double p : probs)
            if (!(p >= 0.0 && p <= 1.0)) throw DataError("synthetic: probability outside [0,1]");

    const int width = static_cast<int>(std::to_string(
        std::max(spec.malware_count, spec.benign_count)).size());

    Dataset ds;
    ds.labeled = true;
    ds.feature_names.reserve(spec.feature_count);
    const int name_width = static_cast<int>(std::to_string(spec.feature_count).size());
    for (std::size_t i = 1; i <= spec.feature_count; ++i)
        ds.feature_names.push_back("f" + zero_padded(i, name_width));

    Rng rng(spec.seed);
    auto emit_class = [&](Label label, std::size_t count, const std::vector<double>& probs,
                          const char* prefix) {
        for (std::size_t s = 1; s <= count; ++s) {
            FeatureVector vec;
            vec.app_id = prefix + zero_padded(s, std::max(width, 5));
            vec.label = label;
            vec.values.reserve(spec.feature_count);
            for (std::size_t i = 0; i < spec.feature_count; ++i)
                vec.values.push_back(rng.next_unit() < probs[i] ? 1 : 0);
            ds.vectors.push_back(std::move(vec));
        }
    };
    emit_class(Label::Malware, spec.malware_count, malware_probs, "mal");
    emit_class(Label::Benign, spec.benign_count, benign_probs, "ben");
    return ds;
}

}  // namespace eigenscan
