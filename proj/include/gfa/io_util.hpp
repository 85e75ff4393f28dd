#pragma once

#include <string>
#include <string_view>

namespace gfa {

/// Whole file as bytes; throws io_error if unreadable.
std::string read_file(const std::string& path);

/// Writes via a temp file in the same directory and renames into place, so a
/// failed run never leaves a partial output behind.
void atomic_write_file(const std::string& path, std::string_view bytes);

}  // namespace gfa
