#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace styleseg {

// FNV-1a 64-bit content hashing for provenance tracking and the
// content-addressed store. Not cryptographic; collision odds over the
// handful of artifacts a pipeline produces are negligible.
class Fnv1a64 {
public:
    void update(const void* data, size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001b3ULL;
        }
    }
    void update(const std::string& s) { update(s.data(), s.size()); }
    uint64_t digest() const { return h_; }

private:
    uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline uint64_t hash_bytes(const void* data, size_t n) {
    Fnv1a64 h;
    h.update(data, n);
    return h.digest();
}

inline uint64_t hash_string(const std::string& s) { return hash_bytes(s.data(), s.size()); }

inline std::string hash_hex(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace styleseg
