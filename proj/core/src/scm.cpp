#include "styleseg/scm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "styleseg/errors.hpp"
#include "styleseg/image_ops.hpp"

namespace styleseg {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double wobble_at(const ShapeSpec& s, double theta) {
    double f = 1.0;
    size_t terms = s.wobble.size() / 2;
    for (size_t k = 0; k < terms; ++k) {
        double a = s.wobble[2 * k];
        double b = s.wobble[2 * k + 1];
        f += a * std::cos((k + 1) * theta) + b * std::sin((k + 1) * theta);
    }
    return f;
}

bool inside_shape(const ShapeSpec& s, double x, double y) {
    double dx = x - s.center[0];
    double dy = y - s.center[1];
    double c = std::cos(s.rotation), sn = std::sin(s.rotation);
    double u = (dx * c + dy * sn) / s.radii[0];
    double v = (-dx * sn + dy * c) / s.radii[1];
    double rho = std::sqrt(u * u + v * v);
    if (rho < 1e-12) return true;
    double theta = std::atan2(v, u);
    return rho <= wobble_at(s, theta);
}
}  // namespace

void SceneConfig::validate() const {
    if (num_classes < 2) throw ConfigError("scene config: num_classes must be >= 2");
    if (static_cast<int>(per_class.size()) != num_classes)
        throw ConfigError("scene config: per_class size must equal num_classes");
    for (const auto& r : per_class) {
        if (!r.center_x.valid() || !r.center_y.valid() || !r.radius_a.valid() ||
            !r.radius_b.valid() || !r.rotation.valid())
            throw ConfigError("scene config: invalid range (hi < lo)");
        if (r.radius_a.lo <= 0.0 || r.radius_b.lo <= 0.0)
            throw ConfigError("scene config: radii must be positive");
    }
}

SceneConfig default_scene_config(int num_classes) {
    if (num_classes < 2) throw ConfigError("default_scene_config: num_classes must be >= 2");
    SceneConfig cfg;
    cfg.num_classes = num_classes;
    cfg.per_class.resize(static_cast<size_t>(num_classes));
    // vertical stack of blobs in [0.15, 0.85], slight horizontal jitter
    for (int i = 0; i < num_classes; ++i) {
        double band_lo = 0.15 + 0.7 * (i + 0.25) / num_classes;
        double band_hi = 0.15 + 0.7 * (i + 0.75) / num_classes;
        ShapeRanges r;
        r.center_x = {0.40, 0.60};
        r.center_y = {band_lo, band_hi};
        r.radius_a = {0.09, 0.15};
        r.radius_b = {0.05, 0.085};
        r.rotation = {-0.35, 0.35};
        r.wobble_amp = 0.06;
        cfg.per_class[static_cast<size_t>(i)] = r;
    }
    return cfg;
}

void DomainSpec::validate() const {
    if (name.empty()) throw ConfigError("domain spec: empty name");
    if (intensity.size() < 3) throw ConfigError("domain spec: intensity table must cover background and >= 2 classes");
    for (const auto& iv : intensity)
        if (!iv.valid()) throw ConfigError("domain " + name + ": invalid intensity range");
    if (!gamma.valid() || gamma.lo <= 0.0) throw ConfigError("domain " + name + ": gamma range must be positive");
    if (!blur_sigma.valid() || blur_sigma.lo < 0.0) throw ConfigError("domain " + name + ": blur range must be >= 0");
    if (!noise_std.valid() || noise_std.lo < 0.0) throw ConfigError("domain " + name + ": noise range must be >= 0");
    if (!edge_gain.valid() || edge_gain.lo < 0.0) throw ConfigError("domain " + name + ": edge-gain range must be >= 0");
    if (invert_prob < 0.0 || invert_prob > 1.0) throw ConfigError("domain " + name + ": invert_prob outside [0,1]");
}

std::vector<int> DomainSpec::declared_ordering() const {
    std::vector<int> ids(intensity.size() - 1);
    std::iota(ids.begin(), ids.end(), 1);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        return intensity[static_cast<size_t>(a)].mid() > intensity[static_cast<size_t>(b)].mid();
    });
    return ids;
}

std::vector<DomainSpec> builtin_domains(int num_classes) {
    if (num_classes != 5)
        throw ConfigError("builtin domains are defined for 5 classes; build custom DomainSpecs otherwise");

    auto bands = [](std::vector<std::pair<double, double>> v) {
        std::vector<Interval> out;
        for (auto [lo, hi] : v) out.push_back({lo, hi});
        return out;
    };

    DomainSpec ct;
    ct.name = "synthCT";
    // near-black background, ascending with class id: c5 > c4 > c3 > c2 > c1
    ct.intensity = bands({{0.00, 0.04}, {0.35, 0.45}, {0.50, 0.60}, {0.62, 0.72}, {0.75, 0.85}, {0.88, 0.98}});
    ct.gamma = {0.95, 1.05};
    ct.blur_sigma = {0.2, 0.5};
    ct.noise_std = {0.01, 0.03};
    ct.edge_gain = {0.0, 0.3};
    ct.invert_prob = 0.0;
    ct.content_coupling = 0.04;

    DomainSpec t1;
    t1.name = "synthT1";
    // mid-gray background, c3 > c1 > c4 > c2 > c5
    t1.intensity = bands({{0.38, 0.48}, {0.68, 0.76}, {0.24, 0.32}, {0.85, 0.95}, {0.55, 0.63}, {0.12, 0.20}});
    t1.gamma = {0.80, 0.95};
    t1.blur_sigma = {0.5, 1.0};
    t1.noise_std = {0.02, 0.05};
    t1.edge_gain = {0.0, 0.1};
    t1.invert_prob = 0.0;
    t1.content_coupling = 0.04;

    DomainSpec t2;
    t2.name = "synthT2";
    // dark-gray background, descending with class id: c1 > c2 > c3 > c4 > c5
    t2.intensity = bands({{0.10, 0.16}, {0.85, 0.95}, {0.70, 0.78}, {0.55, 0.63}, {0.40, 0.48}, {0.22, 0.30}});
    t2.gamma = {1.00, 1.15};
    t2.blur_sigma = {0.4, 0.9};
    t2.noise_std = {0.015, 0.045};
    t2.edge_gain = {0.0, 0.1};
    t2.invert_prob = 0.0;
    t2.content_coupling = 0.04;

    DomainSpec xr;
    xr.name = "synthXR";
    // light-gray background, c2 > c5 > c1 > c3 > c4, strong edges, half inverted
    xr.intensity = bands({{0.20, 0.28}, {0.45, 0.53}, {0.85, 0.93}, {0.33, 0.40}, {0.06, 0.14}, {0.65, 0.73}});
    xr.gamma = {0.9, 1.1};
    xr.blur_sigma = {0.1, 0.4};
    xr.noise_std = {0.025, 0.055};
    xr.edge_gain = {0.6, 1.4};
    xr.invert_prob = 0.5;
    xr.content_coupling = 0.04;

    return {ct, t1, t2, xr};
}

const DomainSpec& builtin_domain(const std::string& name, int num_classes) {
    static const std::vector<DomainSpec> domains = builtin_domains(5);
    (void)num_classes;
    for (const auto& d : domains)
        if (d.name == name) return d;
    throw ConfigError("unknown builtin domain: " + name);
}

ContentFamily sample_content_family(uint64_t seed, const SceneConfig& cfg) {
    cfg.validate();
    Rng rng(seed_mix(seed, "content"));
    ContentFamily fam;
    fam.center_amp = cfg.phase_center_amp;
    fam.radius_amp = cfg.phase_radius_amp;
    for (int i = 0; i < cfg.num_classes; ++i) {
        const auto& r = cfg.per_class[static_cast<size_t>(i)];
        ShapeSpec s;
        s.class_id = i + 1;
        s.center[0] = r.center_x.sample(rng);
        s.center[1] = r.center_y.sample(rng);
        s.radii[0] = r.radius_a.sample(rng);
        s.radii[1] = r.radius_b.sample(rng);
        s.rotation = r.rotation.sample(rng);
        s.wobble.resize(static_cast<size_t>(2 * cfg.wobble_terms));
        for (int k = 0; k < cfg.wobble_terms; ++k) {
            double amp = r.wobble_amp / (k + 1);
            s.wobble[static_cast<size_t>(2 * k)] = rng.uniform(-amp, amp);
            s.wobble[static_cast<size_t>(2 * k + 1)] = rng.uniform(-amp, amp);
        }
        // geometry outside the unit square is clipped at rasterization
        fam.base.push_back(s);

        double ang = rng.uniform(0.0, kTwoPi);
        fam.drift_dir.push_back(std::cos(ang));
        fam.drift_dir.push_back(std::sin(ang));
        fam.radius_phase.push_back(rng.uniform(0.0, kTwoPi));
    }
    return fam;
}

ContentLatent content_at_phase(const ContentFamily& family, double phase) {
    ContentLatent c;
    c.volume_phase = phase;
    for (size_t i = 0; i < family.base.size(); ++i) {
        ShapeSpec s = family.base[i];
        double t = phase - 0.5;
        s.center[0] += family.center_amp * t * family.drift_dir[2 * i];
        s.center[1] += family.center_amp * t * family.drift_dir[2 * i + 1];
        // radius swells and shrinks smoothly along the volume
        double m = 1.0 + family.radius_amp * (std::sin(kTwoPi * 0.5 * phase + family.radius_phase[i]) - 0.3) * 0.5;
        m = std::max(0.35, m);
        s.radii[0] *= m;
        s.radii[1] *= m;
        c.shapes.push_back(s);
    }
    return c;
}

ContentLatent sample_content(uint64_t seed, const SceneConfig& cfg) {
    ContentFamily fam = sample_content_family(seed, cfg);
    Rng rng(seed_mix(seed, "phase"));
    return content_at_phase(fam, rng.uniform());
}

double foreground_area(const ContentLatent& content) {
    MaskT m = derive_mask(content, kDefaultGrid, kDefaultGrid);
    int64_t fg = 0;
    for (auto x : m.v) fg += (x != 0);
    return static_cast<double>(fg) / static_cast<double>(m.numel());
}

StyleLatent sample_style(const ContentLatent& content, const DomainSpec& domain, uint64_t seed) {
    domain.validate();
    Rng rng(seed_mix(seed, "style:" + domain.name));
    StyleLatent s;
    s.intensity.resize(domain.intensity.size());
    for (size_t k = 0; k < domain.intensity.size(); ++k) s.intensity[k] = domain.intensity[k].sample(rng);
    s.gamma = domain.gamma.sample(rng);
    s.blur_sigma = domain.blur_sigma.sample(rng);
    s.noise_std = domain.noise_std.sample(rng);
    s.edge_gain = domain.edge_gain.sample(rng);
    s.invert = rng.bernoulli(domain.invert_prob);
    s.texture_seed = rng.next_u64();
    // C -> S arrow: total foreground area shifts the noise level
    s.noise_std += domain.content_coupling * foreground_area(content);
    s.noise_std = domain.noise_std.clamp(s.noise_std);
    return s;
}

MaskT derive_mask(const ContentLatent& content, int H, int W) {
    MaskT m({H, W});
    for (int y = 0; y < H; ++y) {
        double py = (y + 0.5) / H;
        for (int x = 0; x < W; ++x) {
            double px = (x + 0.5) / W;
            int label = 0;
            for (const auto& s : content.shapes) {
                // overlap tie-break: higher class id wins
                if (s.class_id > label && inside_shape(s, px, py)) label = s.class_id;
            }
            m.at(y, x) = static_cast<uint8_t>(label);
        }
    }
    return m;
}

TensorF render_image(const ContentLatent& content, const StyleLatent& style, int H, int W) {
    MaskT mask = derive_mask(content, H, W);
    TensorF img({H, W});

    // intensity lookup; background gets a smooth texture whose amplitude
    // scales with the style's noise level
    double tex_amp = std::min(0.08, 1.5 * style.noise_std);
    if (tex_amp > 0.0) {
        Rng trng(seed_mix(style.texture_seed, "bgtex"));
        TensorF tex = value_noise(H, W, 9, trng);
        for (int64_t i = 0; i < img.numel(); ++i) {
            uint8_t c = mask[i];
            double v = style.intensity[c];
            if (c == 0) v += tex_amp * tex[i];
            img[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
    } else {
        for (int64_t i = 0; i < img.numel(); ++i)
            img[i] = static_cast<float>(std::clamp(style.intensity[mask[i]], 0.0, 1.0));
    }

    if (style.gamma != 1.0) {
        for (auto& v : img.v) v = std::pow(v, static_cast<float>(style.gamma));
    }

    if (style.blur_sigma > 0.0) img = gaussian_blur(img, style.blur_sigma);

    if (style.edge_gain > 0.0) {
        TensorF low = gaussian_blur(img, 1.0);
        for (int64_t i = 0; i < img.numel(); ++i)
            img[i] = img[i] + static_cast<float>(style.edge_gain) * (img[i] - low[i]);
    }

    if (style.noise_std > 0.0) {
        Rng nrng(seed_mix(style.texture_seed, "noise"));
        for (auto& v : img.v) v += static_cast<float>(nrng.normal(0.0, style.noise_std));
    }

    clip01(img);
    if (style.invert) {
        for (auto& v : img.v) v = 1.0f - v;
    }
    return img;
}

std::vector<SceneSample> generate_domain(const DomainSpec& domain, const SceneConfig& scene,
                                         int n_volumes, int slices_per_volume, uint64_t seed,
                                         int grid) {
    if (n_volumes < 1 || slices_per_volume < 1)
        throw ConfigError("generate_domain: n_volumes and slices_per_volume must be >= 1");
    domain.validate();
    scene.validate();

    std::vector<SceneSample> out;
    out.reserve(static_cast<size_t>(n_volumes) * slices_per_volume);
    for (int v = 0; v < n_volumes; ++v) {
        uint64_t vol_seed = seed_mix(seed, domain.name + ":vol" + std::to_string(v));
        ContentFamily fam = sample_content_family(vol_seed, scene);
        // one style per volume, coupled to the mid-slice content
        ContentLatent mid = content_at_phase(fam, 0.5);
        StyleLatent vol_style = sample_style(mid, domain, seed_mix(vol_seed, "style"));
        for (int s = 0; s < slices_per_volume; ++s) {
            double phase = slices_per_volume > 1
                               ? static_cast<double>(s) / (slices_per_volume - 1)
                               : 0.5;
            SceneSample sample;
            sample.content = content_at_phase(fam, phase);
            sample.style = vol_style;
            // fresh texture/noise realization per slice, same style parameters
            sample.style.texture_seed = seed_mix(vol_style.texture_seed, static_cast<uint64_t>(s));
            sample.mask = derive_mask(sample.content, grid, grid);
            sample.image = render_image(sample.content, sample.style, grid, grid);
            sample.domain = domain.name;
            sample.volume_id = v;
            sample.slice_index = s;
            out.push_back(std::move(sample));
        }
    }
    return out;
}

}  // namespace styleseg
