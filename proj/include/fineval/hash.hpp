#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace fineval {

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

// SHA-256 of a file's contents. Throws IoFailure if the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace fineval
