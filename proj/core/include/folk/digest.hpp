#pragma once

#include <string>
#include <string_view>

namespace folk {

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// Reads a whole file; throws IoError naming the path on failure.
std::string read_file(const std::string& path);

}  // namespace folk
