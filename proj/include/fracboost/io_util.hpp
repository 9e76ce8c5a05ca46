#pragma once

#include <filesystem>
#include <string>

namespace fracboost {

// Reads a whole file; throws Error naming the path when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes via a temporary file in the same directory followed by a rename, so
// a crash never leaves a partial file at the target path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace fracboost
