#ifndef EIGENSCAN_IO_UTIL_HPP
#define EIGENSCAN_IO_UTIL_HPP

#include <filesystem>
#include <string>

namespace eigenscan {

/// Whole file as a string. Throws DataError when unreadable.
std::string read_text_file(const std::filesystem::path& path);

/// Writes to a temporary file in the destination directory, then renames
/// over the target, so a crash never leaves a half-written output.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

/// "%.17g": enough digits to reparse to the same double.
std::string format_double(double value);

}  // namespace eigenscan

#endif
