#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace offsetforge::csv {

// RFC 4180 minimal quoting: quoted only when the field contains a comma,
// quote, CR, or LF; embedded quotes are doubled.
std::string escape(std::string_view field);

bool needs_quoting(std::string_view field);

// Splits one line (no terminator) into fields. Embedded line breaks inside
// quoted fields are not supported: identifiers and filenames are single-line
// by construction, so an unterminated quote is a parse error. Returns false
// with a message in `err` on malformed quoting.
bool split_row(std::string_view line, std::vector<std::string>& fields, std::string& err);

} // namespace offsetforge::csv
