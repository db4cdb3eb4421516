#pragma once

#include <string>

namespace glpm {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// SHA-256 of a file's contents; throws ValidationError when unreadable.
std::string sha256_file(const std::string& path);

}  // namespace glpm
