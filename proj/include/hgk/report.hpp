#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hgk {

/// Formats a double with 12 significant digits ("%.12g"), the report contract.
std::string fmt_real(double v);

/// An ordered key/value report with a pass/fail verdict. Keys are emitted in
/// insertion order so report bytes are stable across runs.
class Report {
public:
    explicit Report(std::string title) : title_(std::move(title)) {}

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, long long value);
    void add(const std::string& key, double value);
    void add_flag(const std::string& key, bool value);
    void merge_section(const Report& sub); ///< inlines `sub` with "sub.title." key prefixes

    void set_failed(const std::string& section);
    bool ok() const { return ok_; }
    const std::string& first_failure() const { return first_failure_; }
    const std::string& title() const { return title_; }
    const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

    std::string to_text() const;

private:
    std::string title_;
    std::vector<std::pair<std::string, std::string>> fields_;
    bool ok_ = true;
    std::string first_failure_;
};

} // namespace hgk
