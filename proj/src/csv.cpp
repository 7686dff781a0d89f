#include "offsetforge/csv.hpp"

namespace offsetforge::csv {

bool needs_quoting(std::string_view field) {
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\r' || c == '\n') return true;
    }
    return false;
}

std::string escape(std::string_view field) {
    if (!needs_quoting(field)) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

bool split_row(std::string_view line, std::vector<std::string>& fields, std::string& err) {
    fields.clear();
    std::string current;
    size_t i = 0;
    const size_t n = line.size();
    while (true) {
        current.clear();
        if (i < n && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < n) {
                if (line[i] == '"') {
                    if (i + 1 < n && line[i + 1] == '"') {
                        current += '"';
                        i += 2;
                    } else {
                        ++i;
                        closed = true;
                        break;
                    }
                } else {
                    current += line[i++];
                }
            }
            if (!closed) {
                err = "unterminated quoted field";
                return false;
            }
            if (i < n && line[i] != ',') {
                err = "garbage after closing quote";
                return false;
            }
        } else {
            while (i < n && line[i] != ',') {
                if (line[i] == '"') {
                    err = "bare quote inside unquoted field";
                    return false;
                }
                current += line[i++];
            }
        }
        fields.push_back(current);
        if (i >= n) break;
        ++i; // consume comma
        if (i == n) {
            fields.emplace_back();
            break;
        }
    }
    return true;
}

} // namespace offsetforge::csv
