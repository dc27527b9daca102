#pragma once

#include <cmath>
#include <functional>

#include "styleseg/rng.hpp"
#include "styleseg/tensor.hpp"

namespace testsupport {

using styleseg::Rng;
using styleseg::Tensor;

inline Tensor<double> randn(std::vector<int> shape, Rng& rng, double std = 1.0) {
    Tensor<double> t(std::move(shape));
    for (auto& x : t.v) x = rng.normal(0.0, std);
    return t;
}

// Central finite differences of a scalar function w.r.t. one tensor.
inline Tensor<double> numeric_grad(const std::function<double()>& f, Tensor<double>& x,
                                   double h = 1e-6) {
    Tensor<double> g(x.shape);
    for (int64_t i = 0; i < x.numel(); ++i) {
        double orig = x[i];
        x[i] = orig + h;
        double fp = f();
        x[i] = orig - h;
        double fm = f();
        x[i] = orig;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// max_i |a-b| / max(|a|,|b|,floor)
inline double max_rel_err(const Tensor<double>& a, const Tensor<double>& b, double floor = 1e-4) {
    double worst = 0.0;
    for (int64_t i = 0; i < a.numel(); ++i) {
        double denom = std::max({std::abs(a[i]), std::abs(b[i]), floor});
        worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
    }
    return worst;
}

}  // namespace testsupport
