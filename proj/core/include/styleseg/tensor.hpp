#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "styleseg/errors.hpp"

namespace styleseg {

// Dense row-major n-d array. Deliberately minimal: shape + flat storage +
// indexing helpers. All math lives in the layers and ops that use it.
template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> v;

    Tensor() = default;
    explicit Tensor(std::vector<int> s, T fill = T(0)) : shape(std::move(s)) {
        v.assign(static_cast<size_t>(numel_of(shape)), fill);
    }

    static int64_t numel_of(const std::vector<int>& s) {
        int64_t n = 1;
        for (int d : s) {
            if (d < 0) throw ContractError("negative tensor dimension");
            n *= d;
        }
        return n;
    }

    int64_t numel() const { return static_cast<int64_t>(v.size()); }
    int dim(int i) const { return shape[static_cast<size_t>(i)]; }
    int rank() const { return static_cast<int>(shape.size()); }

    T* data() { return v.data(); }
    const T* data() const { return v.data(); }

    T& operator[](int64_t i) { return v[static_cast<size_t>(i)]; }
    const T& operator[](int64_t i) const { return v[static_cast<size_t>(i)]; }

    // 2-d / 3-d / 4-d accessors; caller guarantees rank.
    T& at(int i, int j) { return v[static_cast<size_t>(i) * shape[1] + j]; }
    const T& at(int i, int j) const { return v[static_cast<size_t>(i) * shape[1] + j]; }

    T& at(int i, int j, int k) {
        return v[(static_cast<size_t>(i) * shape[1] + j) * shape[2] + k];
    }
    const T& at(int i, int j, int k) const {
        return v[(static_cast<size_t>(i) * shape[1] + j) * shape[2] + k];
    }

    T& at(int i, int j, int k, int l) {
        return v[((static_cast<size_t>(i) * shape[1] + j) * shape[2] + k) * static_cast<size_t>(shape[3]) + l];
    }
    const T& at(int i, int j, int k, int l) const {
        return v[((static_cast<size_t>(i) * shape[1] + j) * shape[2] + k) * static_cast<size_t>(shape[3]) + l];
    }

    void fill(T x) { std::fill(v.begin(), v.end(), x); }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }

    std::string shape_str() const {
        std::string s = "(";
        for (size_t i = 0; i < shape.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(shape[i]);
        }
        return s + ")";
    }

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> out(shape);
        for (size_t i = 0; i < v.size(); ++i) out.v[i] = static_cast<U>(v[i]);
        return out;
    }
};

template <typename T>
void check_same_shape(const Tensor<T>& a, const Tensor<T>& b, const char* what) {
    if (!a.same_shape(b))
        throw ContractError(std::string(what) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
}

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;
using MaskT = Tensor<uint8_t>;

}  // namespace styleseg
