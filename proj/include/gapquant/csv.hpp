#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gapquant::csv {

/// Comma-separated reader with RFC-4180 quoting: quoted fields may hold commas,
/// doubled quotes and line breaks. Accepts LF or CRLF and strips a leading UTF-8 BOM.
class Reader {
public:
    explicit Reader(std::istream& in);

    /// Next record, or nullopt at end of input. Throws MalformedFile on an
    /// unterminated quoted field.
    std::optional<std::vector<std::string>> next();

    /// 1-based index of the record most recently returned.
    std::size_t record_number() const { return record_; }

private:
    std::istream& in_;
    std::size_t record_ = 0;
    bool first_ = true;
};

/// Quotes the field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace gapquant::csv
