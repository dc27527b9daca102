#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "styleseg/rng.hpp"
#include "styleseg/tensor.hpp"

namespace styleseg {

// Synthetic scene generator. The generative chain is:
//   content <- exogenous noise
//   style   <- (content, exogenous noise)        [area -> noise-std coupling]
//   image   <- (content, style)
//   mask    <- content only
// so labels are invariant to style by construction, and both latent factors
// are stored with every sample.

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool valid() const { return hi >= lo; }
    double sample(Rng& rng) const { return rng.uniform(lo, hi); }
    double clamp(double x) const { return std::clamp(x, lo, hi); }
    double mid() const { return 0.5 * (lo + hi); }
};

// One elliptical blob with a Fourier-wobbled boundary.
struct ShapeSpec {
    int class_id = 1;                  // 1..K
    double center[2] = {0.5, 0.5};     // (x, y) in the unit square
    double radii[2] = {0.1, 0.1};      // semi-axes, unit-square fraction
    double rotation = 0.0;             // radians
    std::vector<double> wobble;        // interleaved (a_k, b_k) Fourier coefficients
};

struct ContentLatent {
    std::vector<ShapeSpec> shapes;     // ordered by class_id, ids unique
    double volume_phase = 0.5;         // smooth cross-slice coordinate in [0,1]
};

struct StyleLatent {
    std::vector<double> intensity;     // per-class mean intensity, index 0 = background, size K+1
    double gamma = 1.0;                // > 0
    double blur_sigma = 0.0;           // pixels, >= 0
    double noise_std = 0.0;            // >= 0
    double edge_gain = 0.0;            // >= 0, unsharp-mask strength
    uint64_t texture_seed = 0;         // seeds background texture and pixel noise
    bool invert = false;
};

// Per-class geometry sampling ranges.
struct ShapeRanges {
    Interval center_x, center_y;
    Interval radius_a, radius_b;
    Interval rotation;
    double wobble_amp = 0.05;
};

struct SceneConfig {
    int num_classes = 5;               // K >= 2
    int wobble_terms = 3;
    double phase_center_amp = 0.04;    // how far centers drift across a volume
    double phase_radius_amp = 0.25;    // relative radius modulation across a volume
    std::vector<ShapeRanges> per_class;  // size K, index class_id-1

    void validate() const;
};

// Stacked-column layout: K blobs in vertical bands, loosely mimicking a
// 5-class spine-like phantom.
SceneConfig default_scene_config(int num_classes = 5);

struct DomainSpec {
    std::string name;
    std::vector<Interval> intensity;   // size K+1, index 0 = background
    Interval gamma, blur_sigma, noise_std, edge_gain;
    double invert_prob = 0.0;
    double content_coupling = 0.0;     // area -> noise-std shift, realizes C -> S

    void validate() const;
    // class ids sorted by descending intensity-range midpoint
    std::vector<int> declared_ordering() const;
};

// The four built-in domains (distinct per-class intensity orderings).
std::vector<DomainSpec> builtin_domains(int num_classes = 5);
const DomainSpec& builtin_domain(const std::string& name, int num_classes = 5);

struct SceneSample {
    TensorF image;    // (H, W) in [0,1]
    MaskT mask;       // (H, W) labels in 0..K
    ContentLatent content;
    StyleLatent style;
    std::string domain;
    int volume_id = 0;
    int slice_index = 0;
};

constexpr int kDefaultGrid = 64;

// Smoothly phase-parameterized family of scenes; one per volume.
struct ContentFamily {
    std::vector<ShapeSpec> base;           // shapes at phase 0.5
    std::vector<double> drift_dir;         // per shape: (dx, dy) drift direction, interleaved
    std::vector<double> radius_phase;      // per shape: phase offset of the radius modulation
    double center_amp = 0.0;
    double radius_amp = 0.0;
};

ContentFamily sample_content_family(uint64_t seed, const SceneConfig& cfg);
ContentLatent content_at_phase(const ContentFamily& family, double phase);

ContentLatent sample_content(uint64_t seed, const SceneConfig& cfg);
StyleLatent sample_style(const ContentLatent& content, const DomainSpec& domain, uint64_t seed);

MaskT derive_mask(const ContentLatent& content, int H = kDefaultGrid, int W = kDefaultGrid);
TensorF render_image(const ContentLatent& content, const StyleLatent& style,
                     int H = kDefaultGrid, int W = kDefaultGrid);

// foreground fraction of the rasterized mask on the reference grid
double foreground_area(const ContentLatent& content);

std::vector<SceneSample> generate_domain(const DomainSpec& domain, const SceneConfig& scene,
                                         int n_volumes, int slices_per_volume, uint64_t seed,
                                         int grid = kDefaultGrid);

}  // namespace styleseg
