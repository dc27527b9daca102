#pragma once

#include <cmath>
#include <vector>

#include "styleseg/rng.hpp"
#include "styleseg/tensor.hpp"

namespace styleseg {

// Separable Gaussian blur, kernel radius ceil(3*sigma), edge-clamped.
inline TensorF gaussian_blur(const TensorF& img, double sigma) {
    if (sigma <= 0.0) return img;
    int H = img.shape[0], W = img.shape[1];
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<float> kernel(static_cast<size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
        kernel[static_cast<size_t>(i + radius)] = static_cast<float>(w);
        sum += w;
    }
    for (auto& k : kernel) k = static_cast<float>(k / sum);

    TensorF tmp({H, W}), out({H, W});
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            float acc = 0.f;
            for (int i = -radius; i <= radius; ++i) {
                int xx = std::clamp(x + i, 0, W - 1);
                acc += kernel[static_cast<size_t>(i + radius)] * img.at(y, xx);
            }
            tmp.at(y, x) = acc;
        }
    }
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            float acc = 0.f;
            for (int i = -radius; i <= radius; ++i) {
                int yy = std::clamp(y + i, 0, H - 1);
                acc += kernel[static_cast<size_t>(i + radius)] * tmp.at(yy, x);
            }
            out.at(y, x) = acc;
        }
    }
    return out;
}

// Bilinear sample with edge clamping; (y, x) in pixel coordinates.
inline float bilinear_sample(const TensorF& img, double y, double x) {
    int H = img.shape[0], W = img.shape[1];
    double yc = std::clamp(y, 0.0, static_cast<double>(H - 1));
    double xc = std::clamp(x, 0.0, static_cast<double>(W - 1));
    int y0 = static_cast<int>(std::floor(yc)), x0 = static_cast<int>(std::floor(xc));
    int y1 = std::min(y0 + 1, H - 1), x1 = std::min(x0 + 1, W - 1);
    double fy = yc - y0, fx = xc - x0;
    double v = (1 - fy) * ((1 - fx) * img.at(y0, x0) + fx * img.at(y0, x1)) +
               fy * ((1 - fx) * img.at(y1, x0) + fx * img.at(y1, x1));
    return static_cast<float>(v);
}

inline uint8_t nearest_sample(const MaskT& m, double y, double x) {
    int H = m.shape[0], W = m.shape[1];
    int yi = std::clamp(static_cast<int>(std::lround(y)), 0, H - 1);
    int xi = std::clamp(static_cast<int>(std::lround(x)), 0, W - 1);
    return m.at(yi, xi);
}

// Smooth value noise in [-1, 1]: coarse random lattice, bilinear upsample.
inline TensorF value_noise(int H, int W, int cells, Rng& rng) {
    int C = std::max(2, cells);
    TensorF lattice({C, C});
    for (auto& x : lattice.v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
    TensorF out({H, W});
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            double gy = static_cast<double>(y) / H * (C - 1);
            double gx = static_cast<double>(x) / W * (C - 1);
            int y0 = static_cast<int>(gy), x0 = static_cast<int>(gx);
            int y1 = std::min(y0 + 1, C - 1), x1 = std::min(x0 + 1, C - 1);
            double fy = gy - y0, fx = gx - x0;
            out.at(y, x) = static_cast<float>(
                (1 - fy) * ((1 - fx) * lattice.at(y0, x0) + fx * lattice.at(y0, x1)) +
                fy * ((1 - fx) * lattice.at(y1, x0) + fx * lattice.at(y1, x1)));
        }
    }
    return out;
}

inline void clip01(TensorF& img) {
    for (auto& x : img.v) x = std::clamp(x, 0.f, 1.f);
}

// 256-bin grayscale histogram, normalized to sum 1. Used by dataset
// self-tests and distribution probes.
inline std::vector<double> image_histogram(const TensorF& img, int bins = 256) {
    std::vector<double> h(static_cast<size_t>(bins), 0.0);
    for (float x : img.v) {
        int b = std::min(bins - 1, static_cast<int>(std::clamp(x, 0.f, 1.f) * bins));
        h[static_cast<size_t>(b)] += 1.0;
    }
    double n = static_cast<double>(img.v.size());
    for (auto& x : h) x /= n;
    return h;
}

}  // namespace styleseg
