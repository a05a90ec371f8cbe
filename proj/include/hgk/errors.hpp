#pragma once

#include <stdexcept>
#include <string>

namespace hgk {

enum class errc {
    malformed_input,
    host_mismatch,
    no_invariant_measure,
    not_subhypergroup,
    degenerate_spectrum,
    non_diagonalizable,
    not_strong,
    no_matching_row,
    ambiguous_match,
    size_bound,
    not_automorphism,
    axiom_failure,
    decomposition_failure,
    hyperfield_invalid,
    duality_mismatch,
    res_not_surjective,
    internal_inconsistency,
    iso_mismatch,
    sequence_broken,
    parse_error,
    schema_error,
};

const char* errc_name(errc c);

/// Library error; `code` identifies the failure class, `what()` carries the
/// witnessing detail (indices, axiom name, file position, ...).
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace hgk
