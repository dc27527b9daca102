#include "styleseg/augment.hpp"

#include <cmath>

#include "styleseg/errors.hpp"
#include "styleseg/image_ops.hpp"

namespace styleseg {

AugmentConfig AugmentConfig::standard() {
    AugmentConfig c;
    c.p_affine = 0.5;
    c.p_elastic = 0.5;
    c.p_brightness = 0.5;
    c.p_contrast = 0.5;
    c.p_gamma = 0.5;
    c.p_noise = 0.5;
    return c;
}

AugmentConfig AugmentConfig::photometric_only() {
    AugmentConfig c;
    c.p_brightness = 0.5;
    c.p_contrast = 0.5;
    c.p_gamma = 0.5;
    c.p_noise = 0.5;
    return c;
}

std::pair<TensorF, MaskT> basic_augment(const TensorF& image, const MaskT& mask,
                                        const AugmentConfig& cfg, uint64_t seed) {
    if (image.shape != std::vector<int>{mask.shape[0], mask.shape[1]})
        throw ContractError("basic_augment: image and mask grids differ");

    Rng rng(seed_mix(seed, "basic_augment"));
    int H = image.shape[0], W = image.shape[1];

    TensorF img = image;
    MaskT msk = mask;

    bool do_affine = rng.bernoulli(cfg.p_affine);
    double angle = 0.0, scale = 1.0, shift_x = 0.0, shift_y = 0.0;
    if (do_affine) {
        angle = cfg.rotate_deg.sample(rng) * M_PI / 180.0;
        scale = cfg.scale.sample(rng);
        shift_x = rng.uniform(-cfg.max_shift, cfg.max_shift) * W;
        shift_y = rng.uniform(-cfg.max_shift, cfg.max_shift) * H;
    }

    bool do_elastic = rng.bernoulli(cfg.p_elastic);
    TensorF dx, dy;
    if (do_elastic) {
        TensorF rx({H, W}), ry({H, W});
        for (auto& v : rx.v) v = static_cast<float>(rng.uniform(-1.0, 1.0));
        for (auto& v : ry.v) v = static_cast<float>(rng.uniform(-1.0, 1.0));
        dx = gaussian_blur(rx, cfg.elastic_sigma);
        dy = gaussian_blur(ry, cfg.elastic_sigma);
        for (auto& v : dx.v) v *= static_cast<float>(cfg.elastic_alpha);
        for (auto& v : dy.v) v *= static_cast<float>(cfg.elastic_alpha);
    }

    if (do_affine || do_elastic) {
        TensorF out_img({H, W});
        MaskT out_msk({H, W});
        double cy = (H - 1) / 2.0, cx = (W - 1) / 2.0;
        double ca = std::cos(angle), sa = std::sin(angle);
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                // inverse map: output pixel -> source location
                double sx = x, sy = y;
                if (do_affine) {
                    double rx0 = (x - cx - shift_x) / scale;
                    double ry0 = (y - cy - shift_y) / scale;
                    sx = ca * rx0 + sa * ry0 + cx;
                    sy = -sa * rx0 + ca * ry0 + cy;
                }
                if (do_elastic) {
                    sx += dx.at(y, x);
                    sy += dy.at(y, x);
                }
                out_img.at(y, x) = bilinear_sample(img, sy, sx);
                out_msk.at(y, x) = nearest_sample(msk, sy, sx);
            }
        }
        img = std::move(out_img);
        msk = std::move(out_msk);
    }

    if (rng.bernoulli(cfg.p_brightness)) {
        float d = static_cast<float>(rng.uniform(-cfg.brightness_delta, cfg.brightness_delta));
        for (auto& v : img.v) v += d;
    }
    if (rng.bernoulli(cfg.p_contrast)) {
        float c = static_cast<float>(cfg.contrast.sample(rng));
        double mean = 0.0;
        for (auto v : img.v) mean += v;
        mean /= static_cast<double>(img.numel());
        for (auto& v : img.v) v = static_cast<float>(mean + c * (v - mean));
    }
    if (rng.bernoulli(cfg.p_gamma)) {
        float g = static_cast<float>(cfg.gamma.sample(rng));
        for (auto& v : img.v) v = std::pow(std::clamp(v, 0.f, 1.f), g);
    }
    if (rng.bernoulli(cfg.p_noise)) {
        for (auto& v : img.v) v += static_cast<float>(rng.normal(0.0, cfg.noise_std));
    }

    clip01(img);
    return {std::move(img), std::move(msk)};
}

}  // namespace styleseg
