#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace botdna::testing {

// Fresh per-suite scratch directory under the test working directory.
inline std::filesystem::path fixture_dir(const std::string& name) {
    std::filesystem::path dir = std::filesystem::path("fixtures") / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace botdna::testing
