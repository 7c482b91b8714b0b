#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace botdna {

// Calls fn once per line, without the trailing newline. Files ending in .gz
// are decompressed transparently. Throws Error if the file cannot be read.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(const std::string&)>& fn);

std::vector<std::string> read_lines(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over the target.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Minimal CSV field splitter; quotes are not interpreted, fields are trimmed
// of surrounding whitespace. Enough for the "a,b" files this tool exchanges.
std::vector<std::string> split_csv_line(const std::string& line);

std::string format_double(double v);  // shortest round-trip representation

}  // namespace botdna
