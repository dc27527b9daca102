#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

#include "styleseg/rng.hpp"
#include "styleseg/tensor.hpp"

namespace styleseg::nn {

using styleseg::Rng;
using styleseg::Tensor;

// Layers operate on NCHW batches, carry their own gradients, and cache what
// backward needs. No autodiff graph: nets wire forward/backward by hand,
// which keeps every gradient testable against finite differences.

template <typename T>
struct ParamRef {
    std::string name;
    Tensor<T>* w;
    Tensor<T>* g;
};

template <typename T>
using MatRM = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MapM = Eigen::Map<MatRM<T>>;
template <typename T>
using CMapM = Eigen::Map<const MatRM<T>>;

// ---------------------------------------------------------------------------
// Conv2d: stride 1, odd kernel, same padding. im2col + GEMM.
template <typename T>
struct Conv2d {
    int cin = 0, cout = 0, k = 3, pad = 1;
    Tensor<T> W;   // (cout, cin*k*k)
    Tensor<T> b;   // (cout)
    Tensor<T> dW, db;
    Tensor<T> x_cache;  // (N, cin, H, W)

    void init(int cin_, int cout_, int k_, Rng& rng) {
        cin = cin_;
        cout = cout_;
        k = k_;
        pad = k_ / 2;
        W = Tensor<T>({cout, cin * k * k});
        b = Tensor<T>({cout});
        dW = Tensor<T>({cout, cin * k * k});
        db = Tensor<T>({cout});
        double std = std::sqrt(2.0 / (cin * k * k));
        for (auto& w : W.v) w = static_cast<T>(rng.normal(0.0, std));
    }

    void zero_init(int cin_, int cout_, int k_) {
        cin = cin_;
        cout = cout_;
        k = k_;
        pad = k_ / 2;
        W = Tensor<T>({cout, cin * k * k});
        b = Tensor<T>({cout});
        dW = Tensor<T>({cout, cin * k * k});
        db = Tensor<T>({cout});
    }

    void im2col(const Tensor<T>& x, int n, Tensor<T>& cols) const {
        int H = x.shape[2], Wd = x.shape[3];
        const T* xn = x.data() + static_cast<size_t>(n) * cin * H * Wd;
        T* cp = cols.data();
        for (int c = 0; c < cin; ++c) {
            const T* xc = xn + static_cast<size_t>(c) * H * Wd;
            for (int ky = 0; ky < k; ++ky) {
                for (int kx = 0; kx < k; ++kx) {
                    for (int y = 0; y < H; ++y) {
                        int sy = y + ky - pad;
                        if (sy < 0 || sy >= H) {
                            for (int xcol = 0; xcol < Wd; ++xcol) *cp++ = T(0);
                            continue;
                        }
                        const T* row = xc + static_cast<size_t>(sy) * Wd;
                        for (int xcol = 0; xcol < Wd; ++xcol) {
                            int sx = xcol + kx - pad;
                            *cp++ = (sx < 0 || sx >= Wd) ? T(0) : row[sx];
                        }
                    }
                }
            }
        }
    }

    void col2im(const Tensor<T>& cols, int n, Tensor<T>& dx) const {
        int H = dx.shape[2], Wd = dx.shape[3];
        T* xn = dx.data() + static_cast<size_t>(n) * cin * H * Wd;
        const T* cp = cols.data();
        for (int c = 0; c < cin; ++c) {
            T* xc = xn + static_cast<size_t>(c) * H * Wd;
            for (int ky = 0; ky < k; ++ky) {
                for (int kx = 0; kx < k; ++kx) {
                    for (int y = 0; y < H; ++y) {
                        int sy = y + ky - pad;
                        if (sy < 0 || sy >= H) {
                            cp += Wd;
                            continue;
                        }
                        T* row = xc + static_cast<size_t>(sy) * Wd;
                        for (int xcol = 0; xcol < Wd; ++xcol) {
                            int sx = xcol + kx - pad;
                            if (sx >= 0 && sx < Wd) row[sx] += cp[xcol];
                        }
                        cp += Wd;
                    }
                }
            }
        }
    }

    Tensor<T> forward(const Tensor<T>& x) {
        x_cache = x;
        int N = x.shape[0], H = x.shape[2], Wd = x.shape[3];
        Tensor<T> y({N, cout, H, Wd});
        Tensor<T> cols({cin * k * k, H * Wd});
        CMapM<T> Wm(W.data(), cout, cin * k * k);
        for (int n = 0; n < N; ++n) {
            im2col(x, n, cols);
            CMapM<T> cm(cols.data(), cin * k * k, H * Wd);
            MapM<T> ym(y.data() + static_cast<size_t>(n) * cout * H * Wd, cout, H * Wd);
            ym.noalias() = Wm * cm;
            for (int c = 0; c < cout; ++c) ym.row(c).array() += b[c];
        }
        return y;
    }

    // Returns dx; accumulates dW/db unless weights are frozen.
    Tensor<T> backward(const Tensor<T>& dy, bool train_weights = true) {
        const Tensor<T>& x = x_cache;
        int N = x.shape[0], H = x.shape[2], Wd = x.shape[3];
        Tensor<T> dx(x.shape);
        Tensor<T> cols({cin * k * k, H * Wd});
        Tensor<T> dcols({cin * k * k, H * Wd});
        CMapM<T> Wm(W.data(), cout, cin * k * k);
        MapM<T> dWm(dW.data(), cout, cin * k * k);
        for (int n = 0; n < N; ++n) {
            CMapM<T> dym(dy.data() + static_cast<size_t>(n) * cout * H * Wd, cout, H * Wd);
            if (train_weights) {
                im2col(x, n, cols);
                CMapM<T> cm(cols.data(), cin * k * k, H * Wd);
                dWm.noalias() += dym * cm.transpose();
                for (int c = 0; c < cout; ++c) db[c] += dym.row(c).sum();
            }
            MapM<T> dcm(dcols.data(), cin * k * k, H * Wd);
            dcm.noalias() = Wm.transpose() * dym;
            col2im(dcols, n, dx);
        }
        return dx;
    }

    void params(std::vector<ParamRef<T>>& out, const std::string& prefix) {
        out.push_back({prefix + ".W", &W, &dW});
        out.push_back({prefix + ".b", &b, &db});
    }
};

// ---------------------------------------------------------------------------
template <typename T>
struct Linear {
    int in = 0, out = 0;
    Tensor<T> W;  // (out, in)
    Tensor<T> b;  // (out)
    Tensor<T> dW, db;
    Tensor<T> x_cache;  // (N, in)

    void init(int in_, int out_, Rng& rng) {
        in = in_;
        out = out_;
        W = Tensor<T>({out, in});
        b = Tensor<T>({out});
        dW = Tensor<T>({out, in});
        db = Tensor<T>({out});
        double std = std::sqrt(2.0 / in);
        for (auto& w : W.v) w = static_cast<T>(rng.normal(0.0, std));
    }

    Tensor<T> forward(const Tensor<T>& x) {
        x_cache = x;
        int N = x.shape[0];
        Tensor<T> y({N, out});
        CMapM<T> xm(x.data(), N, in);
        CMapM<T> Wm(W.data(), out, in);
        MapM<T> ym(y.data(), N, out);
        ym.noalias() = xm * Wm.transpose();
        for (int n = 0; n < N; ++n)
            for (int o = 0; o < out; ++o) y.at(n, o) += b[o];
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy, bool train_weights = true) {
        int N = x_cache.shape[0];
        Tensor<T> dx({N, in});
        CMapM<T> dym(dy.data(), N, out);
        CMapM<T> xm(x_cache.data(), N, in);
        CMapM<T> Wm(W.data(), out, in);
        if (train_weights) {
            MapM<T> dWm(dW.data(), out, in);
            dWm.noalias() += dym.transpose() * xm;
            for (int n = 0; n < N; ++n)
                for (int o = 0; o < out; ++o) db[o] += dy.at(n, o);
        }
        MapM<T> dxm(dx.data(), N, in);
        dxm.noalias() = dym * Wm;
        return dx;
    }

    void params(std::vector<ParamRef<T>>& out_refs, const std::string& prefix) {
        out_refs.push_back({prefix + ".W", &W, &dW});
        out_refs.push_back({prefix + ".b", &b, &db});
    }
};

// ---------------------------------------------------------------------------
// 2x2 average pool, stride 2.
template <typename T>
struct AvgPool2 {
    std::vector<int> in_shape;

    Tensor<T> forward(const Tensor<T>& x) {
        in_shape = x.shape;
        int N = x.shape[0], C = x.shape[1], H = x.shape[2], W = x.shape[3];
        Tensor<T> y({N, C, H / 2, W / 2});
        for (int n = 0; n < N; ++n)
            for (int c = 0; c < C; ++c)
                for (int h = 0; h < H / 2; ++h)
                    for (int w = 0; w < W / 2; ++w)
                        y.at(n, c, h, w) = (x.at(n, c, 2 * h, 2 * w) + x.at(n, c, 2 * h, 2 * w + 1) +
                                            x.at(n, c, 2 * h + 1, 2 * w) + x.at(n, c, 2 * h + 1, 2 * w + 1)) /
                                           T(4);
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) {
        Tensor<T> dx(in_shape);
        int N = dy.shape[0], C = dy.shape[1], Ho = dy.shape[2], Wo = dy.shape[3];
        for (int n = 0; n < N; ++n)
            for (int c = 0; c < C; ++c)
                for (int h = 0; h < Ho; ++h)
                    for (int w = 0; w < Wo; ++w) {
                        T g = dy.at(n, c, h, w) / T(4);
                        dx.at(n, c, 2 * h, 2 * w) = g;
                        dx.at(n, c, 2 * h, 2 * w + 1) = g;
                        dx.at(n, c, 2 * h + 1, 2 * w) = g;
                        dx.at(n, c, 2 * h + 1, 2 * w + 1) = g;
                    }
        return dx;
    }
};

// Nearest-neighbor 2x upsample.
template <typename T>
struct Upsample2 {
    Tensor<T> forward(const Tensor<T>& x) {
        int N = x.shape[0], C = x.shape[1], H = x.shape[2], W = x.shape[3];
        Tensor<T> y({N, C, 2 * H, 2 * W});
        for (int n = 0; n < N; ++n)
            for (int c = 0; c < C; ++c)
                for (int h = 0; h < 2 * H; ++h)
                    for (int w = 0; w < 2 * W; ++w) y.at(n, c, h, w) = x.at(n, c, h / 2, w / 2);
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) {
        int N = dy.shape[0], C = dy.shape[1], H = dy.shape[2] / 2, W = dy.shape[3] / 2;
        Tensor<T> dx({N, C, H, W});
        for (int n = 0; n < N; ++n)
            for (int c = 0; c < C; ++c)
                for (int h = 0; h < H; ++h)
                    for (int w = 0; w < W; ++w)
                        dx.at(n, c, h, w) = dy.at(n, c, 2 * h, 2 * w) + dy.at(n, c, 2 * h, 2 * w + 1) +
                                            dy.at(n, c, 2 * h + 1, 2 * w) + dy.at(n, c, 2 * h + 1, 2 * w + 1);
        return dx;
    }
};

// ---------------------------------------------------------------------------
template <typename T>
struct SiLU {
    Tensor<T> x_cache;
    Tensor<T> forward(const Tensor<T>& x) {
        x_cache = x;
        Tensor<T> y(x.shape);
        for (int64_t i = 0; i < x.numel(); ++i) {
            T s = T(1) / (T(1) + std::exp(-x[i]));
            y[i] = x[i] * s;
        }
        return y;
    }
    Tensor<T> backward(const Tensor<T>& dy) {
        Tensor<T> dx(x_cache.shape);
        for (int64_t i = 0; i < dx.numel(); ++i) {
            T s = T(1) / (T(1) + std::exp(-x_cache[i]));
            dx[i] = dy[i] * s * (T(1) + x_cache[i] * (T(1) - s));
        }
        return dx;
    }
};

template <typename T>
struct ReLU {
    Tensor<T> x_cache;
    Tensor<T> forward(const Tensor<T>& x) {
        x_cache = x;
        Tensor<T> y(x.shape);
        for (int64_t i = 0; i < x.numel(); ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
        return y;
    }
    Tensor<T> backward(const Tensor<T>& dy) {
        Tensor<T> dx(x_cache.shape);
        for (int64_t i = 0; i < dx.numel(); ++i) dx[i] = x_cache[i] > T(0) ? dy[i] : T(0);
        return dx;
    }
};

// ---------------------------------------------------------------------------
// Adds a per-(item, channel) bias vector across all spatial positions.
template <typename T>
inline void add_channel_bias(Tensor<T>& x, const Tensor<T>& bias) {
    int N = x.shape[0], C = x.shape[1];
    int64_t HW = static_cast<int64_t>(x.shape[2]) * x.shape[3];
    for (int n = 0; n < N; ++n)
        for (int c = 0; c < C; ++c) {
            T v = bias.at(n, c);
            T* p = x.data() + (static_cast<size_t>(n) * C + c) * HW;
            for (int64_t i = 0; i < HW; ++i) p[i] += v;
        }
}

template <typename T>
inline Tensor<T> channel_bias_grad(const Tensor<T>& dy) {
    int N = dy.shape[0], C = dy.shape[1];
    int64_t HW = static_cast<int64_t>(dy.shape[2]) * dy.shape[3];
    Tensor<T> db({N, C});
    for (int n = 0; n < N; ++n)
        for (int c = 0; c < C; ++c) {
            const T* p = dy.data() + (static_cast<size_t>(n) * C + c) * HW;
            T acc = T(0);
            for (int64_t i = 0; i < HW; ++i) acc += p[i];
            db.at(n, c) = acc;
        }
    return db;
}

// ---------------------------------------------------------------------------
template <typename T>
struct Adam {
    double lr = 1e-3;
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    int64_t t = 0;
    std::vector<std::vector<T>> m, v;

    explicit Adam(double lr_ = 1e-3) : lr(lr_) {}

    void step(std::vector<ParamRef<T>>& params) { step(params, lr); }

    void step(std::vector<ParamRef<T>>& params, double lr_now) {
        if (m.empty()) {
            m.resize(params.size());
            v.resize(params.size());
            for (size_t i = 0; i < params.size(); ++i) {
                m[i].assign(params[i].w->v.size(), T(0));
                v[i].assign(params[i].w->v.size(), T(0));
            }
        }
        ++t;
        double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
        double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
        for (size_t i = 0; i < params.size(); ++i) {
            auto& w = params[i].w->v;
            auto& g = params[i].g->v;
            for (size_t j = 0; j < w.size(); ++j) {
                double gj = static_cast<double>(g[j]);
                double mj = beta1 * static_cast<double>(m[i][j]) + (1.0 - beta1) * gj;
                double vj = beta2 * static_cast<double>(v[i][j]) + (1.0 - beta2) * gj * gj;
                m[i][j] = static_cast<T>(mj);
                v[i][j] = static_cast<T>(vj);
                double mhat = mj / bc1;
                double vhat = vj / bc2;
                w[j] = static_cast<T>(static_cast<double>(w[j]) - lr_now * mhat / (std::sqrt(vhat) + eps));
            }
        }
    }
};

template <typename T>
inline void zero_grads(std::vector<ParamRef<T>>& params) {
    for (auto& p : params) p.g->fill(T(0));
}

template <typename T>
inline bool grads_finite(const std::vector<ParamRef<T>>& params) {
    for (const auto& p : params)
        for (auto g : p.g->v)
            if (!std::isfinite(static_cast<double>(g))) return false;
    return true;
}

// Cosine annealing from lr0 toward eta_min; epoch in [0, n_epochs).
inline double cosine_lr(double lr0, int epoch, int n_epochs, double eta_min = 0.0) {
    if (n_epochs <= 1) return lr0;
    double progress = static_cast<double>(epoch) / n_epochs;
    return eta_min + (lr0 - eta_min) * 0.5 * (1.0 + std::cos(M_PI * progress));
}

}  // namespace styleseg::nn
