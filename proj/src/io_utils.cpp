#include "botdna/io_utils.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "botdna/errors.hpp"

namespace botdna {

namespace {

void for_each_line_gz(const std::filesystem::path& path,
                      const std::function<void(const std::string&)>& fn) {
    gzFile f = gzopen(path.string().c_str(), "rb");
    if (!f) throw Error("cannot open " + path.string());
    std::string line;
    char buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof buf)) > 0) {
        for (int i = 0; i < n; ++i) {
            if (buf[i] == '\n') {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                fn(line);
                line.clear();
            } else {
                line.push_back(buf[i]);
            }
        }
    }
    int err = 0;
    gzerror(f, &err);
    gzclose(f);
    if (err != Z_OK && err != Z_STREAM_END)
        throw Error("error while reading " + path.string());
    if (!line.empty()) {
        if (line.back() == '\r') line.pop_back();
        fn(line);
    }
}

}  // namespace

void for_each_line(const std::filesystem::path& path,
                   const std::function<void(const std::string&)>& fn) {
    if (path.extension() == ".gz") {
        for_each_line_gz(path, fn);
        return;
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        fn(line);
    }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::vector<std::string> out;
    for_each_line(path, [&](const std::string& l) { out.push_back(l); });
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("rename failed for " + path.string() + ": " + ec.message());
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    auto flush = [&]() {
        std::size_t b = cur.find_first_not_of(" \t");
        std::size_t e = cur.find_last_not_of(" \t");
        fields.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
        cur.clear();
    };
    for (char c : line) {
        if (c == ',')
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return fields;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace botdna
