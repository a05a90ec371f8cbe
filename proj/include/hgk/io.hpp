#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "hgk/hyperfield.hpp"
#include "hgk/hypergroup.hpp"

namespace hgk {

struct DefinitionMeta {
    std::string name;
    std::string provenance;
};

/// Parsed definition file: exact files carry a rational tensor, real files
/// (numeric: "real") carry doubles.
struct ParsedDefinition {
    std::variant<RawHypergroup, RawRealHypergroup> raw;
    std::optional<DefinitionMeta> meta;

    bool exact() const { return std::holds_alternative<RawHypergroup>(raw); }
    const RawHypergroup& rational() const { return std::get<RawHypergroup>(raw); }
    const RawRealHypergroup& real() const { return std::get<RawRealHypergroup>(raw); }
};

/// Parses a definition file. Error(parse_error) for malformed JSON,
/// Error(schema_error) naming the offending field for schema violations.
ParsedDefinition parse_definition(const std::string& text);

/// Canonical serialization; for rational tensors this round-trips bit-exactly
/// through parse_definition.
std::string serialize_definition(const Hypergroup& H, const std::optional<DefinitionMeta>& meta = {});
std::string serialize_definition(const RealHypergroup& H, const std::optional<DefinitionMeta>& meta = {});

ParsedDefinition load_definition(const std::string& path);
Hypergroup load_hypergroup(const std::string& path, const Config& cfg = {});

/// Hyperfield file: references two hypergroup definition files (paths are
/// resolved relative to the hyperfield file) plus the assignment map from
/// base element names to lists of target element names.
struct HyperfieldFile {
    std::string target_path;
    std::string base_path;
    std::map<std::string, std::vector<std::string>> assignment;
};

HyperfieldFile parse_hyperfield_file(const std::string& text);
Hyperfield load_hyperfield(const std::string& path, const Config& cfg = {});

/// Sheet-map sidecar for a built sheeted hypergroup (element -> sheet, coset
/// representative); structured text, stable ordering.
std::string sheet_map_text(const SheetedHypergroup& K);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace hgk
