#include "hgk/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hgk {

namespace {

using ordered_json = nlohmann::ordered_json;

void require_keys(const ordered_json& obj, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const std::string& where) {
    for (const char* key : required)
        if (!obj.contains(key)) fail(errc::schema_error, "missing field '" + std::string(key) + "' in " + where);
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* k : required) known = known || key == k;
        for (const char* k : optional) known = known || key == k;
        if (!known) fail(errc::schema_error, "unknown field '" + key + "' in " + where);
    }
}

std::string as_string(const ordered_json& v, const std::string& field) {
    if (!v.is_string()) fail(errc::schema_error, "field '" + field + "' must be a string");
    return v.get<std::string>();
}

double parse_real_value(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') fail(errc::parse_error, "invalid real literal '" + text + "'");
    return v;
}

} // namespace

ParsedDefinition parse_definition(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse_error, e.what());
    }
    if (!j.is_object()) fail(errc::schema_error, "definition must be a JSON object");
    require_keys(j, {"elements", "identity", "involution", "constants"}, {"meta", "numeric"},
                 "definition");

    std::optional<DefinitionMeta> meta;
    if (j.contains("meta")) {
        const auto& m = j["meta"];
        if (!m.is_object()) fail(errc::schema_error, "field 'meta' must be an object");
        require_keys(m, {}, {"name", "provenance"}, "meta");
        meta = DefinitionMeta{};
        if (m.contains("name")) meta->name = as_string(m["name"], "meta.name");
        if (m.contains("provenance")) meta->provenance = as_string(m["provenance"], "meta.provenance");
    }

    bool exact = true;
    if (j.contains("numeric")) {
        std::string mode = as_string(j["numeric"], "numeric");
        if (mode == "real")
            exact = false;
        else if (mode != "exact")
            fail(errc::schema_error, "field 'numeric' must be \"exact\" or \"real\"");
    }

    if (!j["elements"].is_array()) fail(errc::schema_error, "field 'elements' must be an array");
    std::vector<std::string> names;
    std::map<std::string, int> index_of;
    for (const auto& e : j["elements"]) {
        std::string nm = as_string(e, "elements");
        if (index_of.count(nm)) fail(errc::schema_error, "duplicate element '" + nm + "' in elements");
        index_of[nm] = static_cast<int>(names.size());
        names.push_back(nm);
    }
    if (names.empty()) fail(errc::schema_error, "field 'elements' must not be empty");
    const int n = static_cast<int>(names.size());

    auto lookup = [&](const std::string& nm, const std::string& field) {
        auto it = index_of.find(nm);
        if (it == index_of.end())
            fail(errc::schema_error, "unknown element '" + nm + "' in field '" + field + "'");
        return it->second;
    };

    int identity = lookup(as_string(j["identity"], "identity"), "identity");

    std::vector<int> involution(n);
    for (int i = 0; i < n; ++i) involution[i] = i;
    if (!j["involution"].is_object()) fail(errc::schema_error, "field 'involution' must be an object");
    for (const auto& [key, value] : j["involution"].items())
        involution[lookup(key, "involution")] = lookup(as_string(value, "involution"), "involution");

    if (!j["constants"].is_array()) fail(errc::schema_error, "field 'constants' must be an array");
    std::vector<std::string> values(static_cast<std::size_t>(n) * n * n);
    std::vector<char> present(values.size(), 0);
    for (const auto& entry : j["constants"]) {
        if (!entry.is_object()) fail(errc::schema_error, "entries of 'constants' must be objects");
        require_keys(entry, {"i", "j", "k", "value"}, {}, "constants entry");
        int i = lookup(as_string(entry["i"], "constants.i"), "constants.i");
        int jj = lookup(as_string(entry["j"], "constants.j"), "constants.j");
        int k = lookup(as_string(entry["k"], "constants.k"), "constants.k");
        std::size_t pos = (static_cast<std::size_t>(i) * n + jj) * n + k;
        if (present[pos]) fail(errc::schema_error, "duplicate constants entry for (i,j,k)");
        present[pos] = 1;
        values[pos] = as_string(entry["value"], "constants.value");
    }

    ParsedDefinition out;
    out.meta = meta;
    if (exact) {
        RawHypergroup raw;
        raw.names = names;
        raw.identity = identity;
        raw.involution = involution;
        raw.tensor.assign(values.size(), Rat(0));
        for (std::size_t p = 0; p < values.size(); ++p)
            if (present[p]) raw.tensor[p] = parse_rational(values[p]);
        out.raw = std::move(raw);
    } else {
        RawRealHypergroup raw;
        raw.names = names;
        raw.identity = identity;
        raw.involution = involution;
        raw.tensor.assign(values.size(), 0.0);
        for (std::size_t p = 0; p < values.size(); ++p)
            if (present[p]) raw.tensor[p] = parse_real_value(values[p]);
        out.raw = std::move(raw);
    }
    return out;
}

namespace {

template <class S>
ordered_json definition_json(const RawHypergroupT<S>& raw, const std::optional<DefinitionMeta>& meta,
                             bool exact) {
    ordered_json j = ordered_json::object();
    if (meta) {
        ordered_json m = ordered_json::object();
        if (!meta->name.empty()) m["name"] = meta->name;
        if (!meta->provenance.empty()) m["provenance"] = meta->provenance;
        j["meta"] = std::move(m);
    }
    j["elements"] = raw.names;
    j["identity"] = raw.names[raw.identity];
    ordered_json inv = ordered_json::object();
    for (int i = 0; i < raw.size(); ++i) inv[raw.names[i]] = raw.names[raw.involution[i]];
    j["involution"] = std::move(inv);
    if (!exact) j["numeric"] = "real";
    ordered_json constants = ordered_json::array();
    const int n = raw.size();
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k) {
                const S& v = raw.at(i, jj, k);
                bool zero;
                if constexpr (std::is_same_v<S, Rat>)
                    zero = sgn(v) == 0;
                else
                    zero = std::abs(v) <= 1e-15;
                if (zero) continue;
                ordered_json entry = ordered_json::object();
                entry["i"] = raw.names[i];
                entry["j"] = raw.names[jj];
                entry["k"] = raw.names[k];
                if constexpr (std::is_same_v<S, Rat>)
                    entry["value"] = format_rational(v);
                else
                    entry["value"] = fmt_real(v);
                constants.push_back(std::move(entry));
            }
    j["constants"] = std::move(constants);
    return j;
}

} // namespace

std::string serialize_definition(const Hypergroup& H, const std::optional<DefinitionMeta>& meta) {
    return definition_json(H.raw(), meta, true).dump(2) + "\n";
}

std::string serialize_definition(const RealHypergroup& H, const std::optional<DefinitionMeta>& meta) {
    return definition_json(H.raw(), meta, false).dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::parse_error, "cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::parse_error, "cannot write file '" + path + "'");
    out << content;
}

ParsedDefinition load_definition(const std::string& path) { return parse_definition(read_file(path)); }

Hypergroup load_hypergroup(const std::string& path, const Config& cfg) {
    ParsedDefinition def = load_definition(path);
    if (!def.exact())
        fail(errc::malformed_input, "file '" + path + "' holds real values where an exact definition is required");
    return Hypergroup::create(def.rational(), cfg);
}

HyperfieldFile parse_hyperfield_file(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse_error, e.what());
    }
    if (!j.is_object()) fail(errc::schema_error, "hyperfield file must be a JSON object");
    require_keys(j, {"target", "base", "assignment"}, {"meta"}, "hyperfield");
    HyperfieldFile out;
    out.target_path = as_string(j["target"], "target");
    out.base_path = as_string(j["base"], "base");
    if (!j["assignment"].is_object()) fail(errc::schema_error, "field 'assignment' must be an object");
    for (const auto& [key, value] : j["assignment"].items()) {
        if (!value.is_array()) fail(errc::schema_error, "assignment entries must be arrays");
        std::vector<std::string> members;
        for (const auto& m : value) members.push_back(as_string(m, "assignment"));
        out.assignment[key] = std::move(members);
    }
    return out;
}

Hyperfield load_hyperfield(const std::string& path, const Config& cfg) {
    HyperfieldFile file = parse_hyperfield_file(read_file(path));
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& ref) {
        std::filesystem::path p(ref);
        return p.is_absolute() ? p.string() : (dir / p).string();
    };
    Hypergroup target = load_hypergroup(resolve(file.target_path), cfg);
    Hypergroup base = load_hypergroup(resolve(file.base_path), cfg);

    std::map<std::string, int> target_index, base_index;
    for (int i = 0; i < target.size(); ++i) target_index[target.name(i)] = i;
    for (int l = 0; l < base.size(); ++l) base_index[base.name(l)] = l;
    for (const auto& [key, _] : file.assignment)
        if (!base_index.count(key))
            fail(errc::schema_error, "assignment names unknown base element '" + key + "'");

    Hyperfield field{std::move(target), std::move(base), {}};
    field.assignment.resize(field.base.size());
    for (int l = 0; l < field.base.size(); ++l) {
        auto it = file.assignment.find(field.base.name(l));
        if (it == file.assignment.end()) {
            if (l == field.base.identity()) {
                field.assignment[l] = Subhypergroup{{field.target.identity()}};
                continue;
            }
            fail(errc::schema_error,
                 "assignment missing for base element '" + field.base.name(l) + "'");
        }
        std::vector<int> members;
        for (const auto& nm : it->second) {
            auto mi = target_index.find(nm);
            if (mi == target_index.end())
                fail(errc::schema_error, "assignment names unknown target element '" + nm + "'");
            members.push_back(mi->second);
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        field.assignment[l] = Subhypergroup{std::move(members)};
    }
    return field;
}

std::string sheet_map_text(const SheetedHypergroup& K) {
    std::ostringstream out;
    out << "sheet-map\n";
    for (int g = 0; g < K.hypergroup.size(); ++g) {
        int l = K.sheet_of[g];
        out << K.hypergroup.name(g) << ": sheet " << K.field.base.name(l) << " rep "
            << K.field.target.name(K.rep_of(g)) << "\n";
    }
    return out.str();
}

} // namespace hgk
