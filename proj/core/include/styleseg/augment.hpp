#pragma once

#include <cstdint>
#include <utility>

#include "styleseg/scm.hpp"
#include "styleseg/tensor.hpp"

namespace styleseg {

// Basic photometric/geometric augmentation: affine, elastic deformation,
// brightness/contrast, gamma, additive Gaussian noise. Geometric transforms
// hit image and mask identically (nearest-neighbor for the mask);
// photometric transforms hit the image only.
struct AugmentConfig {
    double p_affine = 0.0;
    Interval rotate_deg{-15.0, 15.0};
    Interval scale{0.9, 1.1};
    double max_shift = 0.05;        // fraction of the image side

    double p_elastic = 0.0;
    double elastic_alpha = 4.0;     // displacement amplitude, pixels
    double elastic_sigma = 6.0;     // smoothing of the displacement field

    double p_brightness = 0.0;
    double brightness_delta = 0.15;

    double p_contrast = 0.0;
    Interval contrast{0.7, 1.3};

    double p_gamma = 0.0;
    Interval gamma{0.7, 1.4};

    double p_noise = 0.0;
    double noise_std = 0.03;

    static AugmentConfig identity() { return AugmentConfig{}; }
    static AugmentConfig standard();   // all transforms at p = 0.5
    static AugmentConfig photometric_only();
};

std::pair<TensorF, MaskT> basic_augment(const TensorF& image, const MaskT& mask,
                                        const AugmentConfig& cfg, uint64_t seed);

}  // namespace styleseg
