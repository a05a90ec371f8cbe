#include <cctype>
#include <cstdio>

#include "hgk/errors.hpp"
#include "hgk/rational.hpp"
#include "hgk/report.hpp"

namespace hgk {

const char* errc_name(errc c) {
    switch (c) {
        case errc::malformed_input: return "MalformedInput";
        case errc::host_mismatch: return "HostMismatch";
        case errc::no_invariant_measure: return "NoInvariantMeasure";
        case errc::not_subhypergroup: return "NotSubhypergroup";
        case errc::degenerate_spectrum: return "DegenerateSpectrum";
        case errc::non_diagonalizable: return "NonDiagonalizable";
        case errc::not_strong: return "NotStrong";
        case errc::no_matching_row: return "NoMatchingRow";
        case errc::ambiguous_match: return "AmbiguousMatch";
        case errc::size_bound: return "SizeBound";
        case errc::not_automorphism: return "NotAutomorphism";
        case errc::axiom_failure: return "AxiomFailure";
        case errc::decomposition_failure: return "DecompositionFailure";
        case errc::hyperfield_invalid: return "HyperfieldInvalid";
        case errc::duality_mismatch: return "DualityMismatch";
        case errc::res_not_surjective: return "ResNotSurjective";
        case errc::internal_inconsistency: return "InternalInconsistency";
        case errc::iso_mismatch: return "IsoMismatch";
        case errc::sequence_broken: return "SequenceBroken";
        case errc::parse_error: return "ParseError";
        case errc::schema_error: return "SchemaError";
    }
    return "UnknownError";
}

Rat parse_rational(const std::string& text) {
    if (text.empty()) fail(errc::parse_error, "empty rational literal");
    for (char ch : text) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
            fail(errc::parse_error, "invalid rational literal '" + text + "'");
    }
    mpq_class v;
    if (v.set_str(text, 10) != 0) fail(errc::parse_error, "invalid rational literal '" + text + "'");
    if (v.get_den() == 0) fail(errc::parse_error, "zero denominator in '" + text + "'");
    v.canonicalize();
    return v;
}

std::string format_rational(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    return c.get_str();
}

std::string fmt_real(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Report::add(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
void Report::add(const std::string& key, long long value) { fields_.emplace_back(key, std::to_string(value)); }
void Report::add(const std::string& key, double value) { fields_.emplace_back(key, fmt_real(value)); }
void Report::add_flag(const std::string& key, bool value) { fields_.emplace_back(key, value ? "ok" : "FAIL"); }

void Report::merge_section(const Report& sub) {
    for (const auto& [k, v] : sub.fields_) fields_.emplace_back(sub.title_ + "." + k, v);
    if (!sub.ok_ && ok_) set_failed(sub.title_ + "." + sub.first_failure_);
}

void Report::set_failed(const std::string& section) {
    if (ok_) {
        ok_ = false;
        first_failure_ = section;
    }
}

std::string Report::to_text() const {
    std::string out = "report: " + title_ + "\n";
    for (const auto& [k, v] : fields_) out += k + ": " + v + "\n";
    out += "status: ";
    out += ok_ ? "ok" : ("FAIL (" + first_failure_ + ")");
    out += "\n";
    return out;
}

} // namespace hgk
