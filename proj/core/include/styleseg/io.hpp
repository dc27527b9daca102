#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "styleseg/errors.hpp"
#include "styleseg/hash.hpp"

namespace styleseg {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// write-temp-then-rename so readers never observe a partial file
inline void atomic_write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw IoError("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline uint64_t hash_file(const fs::path& path) {
    std::string bytes = read_file(path);
    return hash_string(bytes);
}

// Hash of a directory tree: sorted relative paths and their contents.
inline uint64_t hash_tree(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root));
    }
    std::sort(files.begin(), files.end());
    Fnv1a64 h;
    for (const auto& rel : files) {
        h.update(rel.generic_string());
        h.update("\0", 1);
        std::string bytes = read_file(root / rel);
        h.update(bytes);
    }
    return h.digest();
}

}  // namespace styleseg
