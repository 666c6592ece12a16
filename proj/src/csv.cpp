#include "gapquant/csv.hpp"

#include "gapquant/errors.hpp"

namespace gapquant::csv {

Reader::Reader(std::istream& in) : in_(in) {}

std::optional<std::vector<std::string>> Reader::next() {
    if (first_) {
        first_ = false;
        if (in_.peek() == 0xEF) {
            char bom[3];
            in_.read(bom, 3);
            if (!(static_cast<unsigned char>(bom[1]) == 0xBB && static_cast<unsigned char>(bom[2]) == 0xBF)) {
                throw MalformedFile("input is not UTF-8 text");
            }
        }
    }

    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    bool field_was_quoted = false;

    for (int ch = in_.get(); ch != std::char_traits<char>::eof(); ch = in_.get()) {
        saw_any = true;
        const char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty() && !field_was_quoted) {
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (c == '\r' && in_.peek() == '\n') {
            // CRLF; the LF ends the record on the next iteration.
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            ++record_;
            return fields;
        } else {
            field.push_back(c);
        }
    }

    if (in_quotes) throw MalformedFile("unterminated quoted field in record " + std::to_string(record_ + 1));
    if (!saw_any) return std::nullopt;
    fields.push_back(std::move(field));
    ++record_;
    return fields;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

} // namespace gapquant::csv
