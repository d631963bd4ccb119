#pragma once

#include <stdexcept>
#include <string>

namespace trunkkit {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the DSL parsers; carries a 1-based source position.
struct parse_error : error {
    parse_error(const std::string& what, int line, int col)
        : error(what + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line(line), col(col) {}

    int line = 0;
    int col = 0;
};

} // namespace trunkkit
