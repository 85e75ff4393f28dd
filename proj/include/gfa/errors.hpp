#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfa {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Node or coordinate outside the tensor bounds.
struct index_error : error {
    using error::error;
};

/// Invalid hyperparameter or incompatible shapes.
struct config_error : error {
    using error::error;
};

/// Input values outside an operation's domain (negative scores, empty rows, ...).
struct domain_error : error {
    using error::error;
};

/// Malformed file content; carries the byte offset of the failure.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t byte_offset)
        : error(what + " (at byte " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
    std::size_t offset;
};

struct io_error : error {
    using error::error;
};

}  // namespace gfa
