#pragma once

#include <cstring>
#include <fstream>
#include <string>
#include <type_traits>

#include "styleseg/io.hpp"
#include "styleseg/tensor.hpp"

namespace styleseg {

// Minimal NPY v1.0 reader/writer for the dtypes this project stores:
// float32 images/latents, float64 arrays, uint8 masks, int32 labels.
// The format is self-describing, so datasets remain inspectable from Python.
namespace npy_detail {

template <typename T>
const char* dtype_str();
template <> inline const char* dtype_str<float>() { return "<f4"; }
template <> inline const char* dtype_str<double>() { return "<f8"; }
template <> inline const char* dtype_str<uint8_t>() { return "|u1"; }
template <> inline const char* dtype_str<int32_t>() { return "<i4"; }

}  // namespace npy_detail

template <typename T>
std::string npy_encode(const Tensor<T>& t) {
    std::string header = "{'descr': '";
    header += npy_detail::dtype_str<T>();
    header += "', 'fortran_order': False, 'shape': ";
    // numpy wants "(n,)" for rank 1 and "(a, b)" for higher ranks
    std::string tup = "(";
    for (size_t i = 0; i < t.shape.size(); ++i) {
        tup += std::to_string(t.shape[i]);
        if (i + 1 < t.shape.size()) tup += ", ";
    }
    if (t.shape.size() == 1) tup += ",";
    tup += ")";
    header += tup + ", }";

    size_t unpadded = 10 + header.size() + 1;
    size_t pad = (64 - unpadded % 64) % 64;
    header += std::string(pad, ' ');
    header += '\n';

    std::string out;
    out.reserve(10 + header.size() + t.v.size() * sizeof(T));
    out += '\x93';
    out += "NUMPY";
    out += '\x01';
    out += '\x00';
    uint16_t hlen = static_cast<uint16_t>(header.size());
    out.append(reinterpret_cast<const char*>(&hlen), 2);
    out += header;
    out.append(reinterpret_cast<const char*>(t.v.data()), t.v.size() * sizeof(T));
    return out;
}

template <typename T>
void npy_save(const fs::path& path, const Tensor<T>& t) {
    atomic_write_file(path, npy_encode(t));
}

template <typename T>
Tensor<T> npy_decode(const std::string& bytes, const std::string& origin = "<memory>") {
    if (bytes.size() < 12 || bytes.compare(0, 6, "\x93NUMPY") != 0)
        throw DataError("not an NPY file: " + origin);
    uint16_t hlen;
    std::memcpy(&hlen, bytes.data() + 8, 2);
    std::string header = bytes.substr(10, hlen);

    auto find_val = [&](const std::string& key) {
        auto p = header.find(key);
        if (p == std::string::npos) throw DataError("bad NPY header in " + origin);
        return p + key.size();
    };

    auto dp = find_val("'descr':");
    auto q1 = header.find('\'', dp);
    auto q2 = header.find('\'', q1 + 1);
    std::string descr = header.substr(q1 + 1, q2 - q1 - 1);
    if (descr != npy_detail::dtype_str<T>())
        throw DataError("NPY dtype " + descr + " does not match expected " +
                        npy_detail::dtype_str<T>() + " in " + origin);
    if (header.find("'fortran_order': False") == std::string::npos)
        throw DataError("fortran-order NPY not supported: " + origin);

    auto sp = header.find('(', find_val("'shape':"));
    auto ep = header.find(')', sp);
    std::string tup = header.substr(sp + 1, ep - sp - 1);
    std::vector<int> shape;
    size_t pos = 0;
    while (pos < tup.size()) {
        while (pos < tup.size() && !isdigit(static_cast<unsigned char>(tup[pos]))) ++pos;
        if (pos >= tup.size()) break;
        size_t end = pos;
        while (end < tup.size() && isdigit(static_cast<unsigned char>(tup[end]))) ++end;
        shape.push_back(std::stoi(tup.substr(pos, end - pos)));
        pos = end;
    }
    if (shape.empty()) shape = {1};

    Tensor<T> t(shape);
    size_t need = t.v.size() * sizeof(T);
    size_t off = 10 + hlen;
    if (bytes.size() - off < need) throw DataError("truncated NPY payload: " + origin);
    std::memcpy(t.v.data(), bytes.data() + off, need);
    return t;
}

template <typename T>
Tensor<T> npy_load(const fs::path& path) {
    return npy_decode<T>(read_file(path), path.string());
}

}  // namespace styleseg
