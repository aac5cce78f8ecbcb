#pragma once

#include <stdexcept>
#include <string>

#include "calgeo/exterior.hpp"

namespace calgeo {

struct FormParseError : std::runtime_error {
    FormParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line(line),
          column(column) {}
    int line;
    int column;
};

// Text format: one term per line, `i1,i2,...,im : coefficient`. Blank lines
// and lines starting with '#' are skipped. Out-of-order indices are sorted
// with the permutation sign; a repeated index within a term is an error.
// The ambient dimension is the largest index unless min_ambient_dim exceeds it.
AlternatingForm parse_form_text(const std::string& text, int min_ambient_dim = 0);
AlternatingForm parse_form_file(const std::string& path, int min_ambient_dim = 0);

// Canonical serialization: increasing indices, terms in lexicographic order,
// duplicates merged.
std::string serialize_form(const AlternatingForm& phi);
void write_form_file(const std::string& path, const AlternatingForm& phi);

}  // namespace calgeo
