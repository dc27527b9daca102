#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "styleseg/dataset.hpp"
#include "styleseg/image_ops.hpp"
#include "styleseg/io.hpp"
#include "styleseg/scm.hpp"

using namespace styleseg;

namespace {

bool content_equal(const ContentLatent& a, const ContentLatent& b) {
    if (a.volume_phase != b.volume_phase || a.shapes.size() != b.shapes.size()) return false;
    for (size_t i = 0; i < a.shapes.size(); ++i) {
        const auto& x = a.shapes[i];
        const auto& y = b.shapes[i];
        if (x.class_id != y.class_id || x.rotation != y.rotation || x.wobble != y.wobble)
            return false;
        for (int k = 0; k < 2; ++k)
            if (x.center[k] != y.center[k] || x.radii[k] != y.radii[k]) return false;
    }
    return true;
}

// binary foreground Dice between two masks
double mask_dice(const MaskT& a, const MaskT& b) {
    int64_t inter = 0, na = 0, nb = 0;
    for (int64_t i = 0; i < a.numel(); ++i) {
        bool fa = a[i] != 0, fb = b[i] != 0;
        inter += (fa && fb);
        na += fa;
        nb += fb;
    }
    if (na + nb == 0) return 1.0;
    return 2.0 * static_cast<double>(inter) / static_cast<double>(na + nb);
}

}  // namespace

TEST_CASE("sample_content: five stacked shapes with distinct class ids") {
    auto cfg = default_scene_config(5);
    auto c = sample_content(0, cfg);
    REQUIRE(c.shapes.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(c.shapes[static_cast<size_t>(i)].class_id == i + 1);
    // stacked: centers ordered along y
    for (int i = 0; i + 1 < 5; ++i)
        CHECK(c.shapes[static_cast<size_t>(i)].center[1] < c.shapes[static_cast<size_t>(i + 1)].center[1]);
}

TEST_CASE("sample_content: deterministic per seed") {
    auto cfg = default_scene_config(5);
    CHECK(content_equal(sample_content(123, cfg), sample_content(123, cfg)));
    CHECK_FALSE(content_equal(sample_content(123, cfg), sample_content(124, cfg)));
}

TEST_CASE("sample_content: empirical center distribution matches configured range") {
    auto cfg = default_scene_config(5);
    const int n = 1000;
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < n; ++s) {
        auto c = sample_content(static_cast<uint64_t>(s), cfg);
        double x = c.shapes[2].center[0];
        sum += x;
        sum2 += x * x;
    }
    const auto& r = cfg.per_class[2].center_x;
    double expect_mean = 0.5 * (r.lo + r.hi);
    double expect_var = (r.hi - r.lo) * (r.hi - r.lo) / 12.0;
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    // Monte-Carlo oracle: uniform moments within 3 standard errors
    CHECK(std::abs(mean - expect_mean) < 3.0 * std::sqrt(expect_var / n));
    CHECK(std::abs(var - expect_var) < 3.0 * expect_var * std::sqrt(2.0 / n));
}

TEST_CASE("sample_content: invalid config rejected") {
    auto cfg = default_scene_config(5);
    cfg.per_class[0].radius_a = {0.2, 0.1};  // hi < lo
    CHECK_THROWS_AS(sample_content(0, cfg), ConfigError);
    auto cfg2 = default_scene_config(5);
    cfg2.num_classes = 1;
    cfg2.per_class.resize(1);
    CHECK_THROWS_AS(sample_content(0, cfg2), ConfigError);
}

TEST_CASE("sample_style: zero coupling leaves noise independent of content") {
    auto cfg = default_scene_config(5);
    DomainSpec d = builtin_domain("synthCT");
    d.content_coupling = 0.0;
    auto small = sample_content(1, cfg);
    auto big = sample_content(1, cfg);
    for (auto& s : big.shapes) {
        s.radii[0] *= 1.5;
        s.radii[1] *= 1.5;
    }
    // same style seed, different content -> identical style draw when coupling is 0
    auto s1 = sample_style(small, d, 99);
    auto s2 = sample_style(big, d, 99);
    CHECK(s1.noise_std == s2.noise_std);
    CHECK(s1.gamma == s2.gamma);
}

TEST_CASE("sample_style: linear area coupling before clipping") {
    auto cfg = default_scene_config(5);
    DomainSpec d = builtin_domain("synthCT");
    d.content_coupling = 0.5;
    d.noise_std = {0.0, 10.0};  // wide range so the clip never binds
    auto c = sample_content(3, cfg);
    auto c2 = c;
    for (auto& s : c2.shapes) {
        s.radii[0] *= 0.5;
        s.radii[1] *= 0.5;
    }
    double a1 = foreground_area(c);
    double a2 = foreground_area(c2);
    auto s1 = sample_style(c, d, 42);
    auto s2 = sample_style(c2, d, 42);
    CHECK(s1.noise_std - s2.noise_std == doctest::Approx(0.5 * (a1 - a2)).epsilon(1e-12));
}

TEST_CASE("sample_style: domain presets satisfy declared intensity ordering") {
    auto cfg = default_scene_config(5);
    auto content = sample_content(5, cfg);
    for (const auto& name : {"synthCT", "synthT2"}) {
        const auto& d = builtin_domain(name);
        std::vector<double> mean(6, 0.0);
        const int n = 1000;
        for (int i = 0; i < n; ++i) {
            auto s = sample_style(content, d, static_cast<uint64_t>(i));
            for (int k = 0; k < 6; ++k) mean[static_cast<size_t>(k)] += s.intensity[static_cast<size_t>(k)] / n;
        }
        auto order = d.declared_ordering();
        for (size_t i = 0; i + 1 < order.size(); ++i)
            CHECK(mean[static_cast<size_t>(order[i])] > mean[static_cast<size_t>(order[i + 1])]);
    }
}

TEST_CASE("builtin domains have four distinct orderings") {
    auto domains = builtin_domains(5);
    REQUIRE(domains.size() == 4);
    std::set<std::vector<int>> orderings;
    for (const auto& d : domains) orderings.insert(d.declared_ordering());
    CHECK(orderings.size() == 4);
}

TEST_CASE("render_image: identity style is the per-class intensity lookup") {
    auto cfg = default_scene_config(5);
    auto c = sample_content(7, cfg);
    StyleLatent s;
    s.intensity = {0.1, 0.3, 0.5, 0.6, 0.8, 0.95};
    s.gamma = 1.0;
    s.blur_sigma = 0.0;
    s.noise_std = 0.0;
    s.edge_gain = 0.0;
    s.invert = false;
    s.texture_seed = 1;

    auto img = render_image(c, s);
    auto mask = derive_mask(c);
    for (int64_t i = 0; i < img.numel(); ++i)
        CHECK(img[i] == static_cast<float>(s.intensity[mask[i]]));
}

TEST_CASE("render_image: inversion equals one minus the non-inverted image") {
    auto cfg = default_scene_config(5);
    auto c = sample_content(11, cfg);
    auto d = builtin_domain("synthXR");
    auto s = sample_style(c, d, 4);
    s.invert = false;
    auto img = render_image(c, s);
    s.invert = true;
    auto inv = render_image(c, s);
    for (int64_t i = 0; i < img.numel(); ++i) CHECK(inv[i] == 1.0f - img[i]);
}

TEST_CASE("render_image: bit-identical across calls") {
    auto cfg = default_scene_config(5);
    auto c = sample_content(13, cfg);
    auto s = sample_style(c, builtin_domain("synthT1"), 8);
    auto a = render_image(c, s);
    auto b = render_image(c, s);
    CHECK(a.v == b.v);
}

TEST_CASE("derive_mask: depends only on content") {
    auto cfg = default_scene_config(5);
    auto c = sample_content(17, cfg);
    auto s1 = sample_style(c, builtin_domain("synthCT"), 1);
    auto s2 = sample_style(c, builtin_domain("synthT2"), 2);
    (void)render_image(c, s1);
    (void)render_image(c, s2);
    auto m1 = derive_mask(c);
    auto m2 = derive_mask(c);
    CHECK(m1.v == m2.v);
}

TEST_CASE("derive_mask: empty shape list yields all background") {
    ContentLatent c;
    auto m = derive_mask(c);
    for (auto x : m.v) CHECK(x == 0);
}

TEST_CASE("derive_mask: centered circle area matches analytic value within 2%") {
    ContentLatent c;
    ShapeSpec s;
    s.class_id = 1;
    s.center[0] = 0.5;
    s.center[1] = 0.5;
    s.radii[0] = 0.25;
    s.radii[1] = 0.25;
    c.shapes.push_back(s);
    auto m = derive_mask(c, 64, 64);
    int64_t count = 0;
    for (auto x : m.v) count += (x != 0);
    double analytic = M_PI * (0.25 * 64) * (0.25 * 64);
    CHECK(std::abs(count - analytic) / analytic < 0.02);
}

TEST_CASE("derive_mask: overlap resolved by higher class id") {
    ContentLatent c;
    ShapeSpec a, b;
    a.class_id = 1;
    a.center[0] = a.center[1] = 0.5;
    a.radii[0] = a.radii[1] = 0.2;
    b = a;
    b.class_id = 3;
    c.shapes = {a, b};
    auto m = derive_mask(c);
    for (auto x : m.v) CHECK((x == 0 || x == 3));
}

TEST_CASE("generate_domain: counts, volume ids, determinism") {
    auto cfg = default_scene_config(5);
    auto d = builtin_domain("synthCT");
    auto ds = generate_domain(d, cfg, 20, 8, 7);
    CHECK(ds.size() == 160);
    std::set<int> vols;
    for (const auto& s : ds) vols.insert(s.volume_id);
    CHECK(vols.size() == 20);

    auto ds2 = generate_domain(d, cfg, 20, 8, 7);
    for (size_t i = 0; i < ds.size(); ++i) {
        CHECK(ds[i].image.v == ds2[i].image.v);
        CHECK(ds[i].mask.v == ds2[i].mask.v);
    }
}

TEST_CASE("generate_domain: neighbor slices more similar than cross-volume slices") {
    auto cfg = default_scene_config(5);
    auto ds = generate_domain(builtin_domain("synthCT"), cfg, 6, 6, 21);
    double neighbor = 0.0;
    int nn = 0;
    for (size_t i = 0; i + 1 < ds.size(); ++i) {
        if (ds[i].volume_id == ds[i + 1].volume_id) {
            neighbor += mask_dice(ds[i].mask, ds[i + 1].mask);
            ++nn;
        }
    }
    neighbor /= nn;

    double cross = 0.0;
    int nc = 0;
    for (size_t i = 0; i < ds.size(); i += 5) {
        for (size_t j = i + 1; j < ds.size(); j += 7) {
            if (ds[i].volume_id != ds[j].volume_id) {
                cross += mask_dice(ds[i].mask, ds[j].mask);
                ++nc;
            }
        }
    }
    cross /= nc;
    CHECK(neighbor > cross);
}

TEST_CASE("dataset save/load round trip and byte-identical regeneration") {
    auto cfg = default_scene_config(5);
    auto dir1 = fs::temp_directory_path() / "styleseg_ds_a";
    auto dir2 = fs::temp_directory_path() / "styleseg_ds_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    auto ds = make_dataset(builtin_domain("synthT2"), cfg, 3, 4, 99);
    save_dataset(dir1, ds);
    auto ds2 = make_dataset(builtin_domain("synthT2"), cfg, 3, 4, 99);
    save_dataset(dir2, ds2);
    CHECK(hash_tree(dir1) == hash_tree(dir2));

    auto loaded = load_dataset(dir1);
    CHECK(loaded.samples.size() == ds.samples.size());
    CHECK(loaded.domain.name == "synthT2");
    for (size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(loaded.samples[i].image.v == ds.samples[i].image.v);
        CHECK(loaded.samples[i].mask.v == ds.samples[i].mask.v);
        CHECK(loaded.samples[i].volume_id == ds.samples[i].volume_id);
        // stored latents reproduce the stored image bit-exactly
        auto re = render_image(loaded.samples[i].content, loaded.samples[i].style,
                               loaded.grid, loaded.grid);
        CHECK(re.v == loaded.samples[i].image.v);
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("label invariance: masks identical across styles") {
    auto cfg = default_scene_config(5);
    auto domains = builtin_domains(5);
    for (int i = 0; i < 50; ++i) {
        auto c = sample_content(static_cast<uint64_t>(1000 + i), cfg);
        auto ref = derive_mask(c);
        const auto& d1 = domains[static_cast<size_t>(i % 4)];
        const auto& d2 = domains[static_cast<size_t>((i + 1) % 4)];
        auto sa = sample_style(c, d1, static_cast<uint64_t>(i));
        auto sb = sample_style(c, d2, static_cast<uint64_t>(i + 7));
        (void)render_image(c, sa);
        (void)render_image(c, sb);
        CHECK(derive_mask(c).v == ref.v);
    }
}

TEST_CASE("coupling realization: area-noise correlation sign") {
    auto cfg = default_scene_config(5);
    auto d = builtin_domain("synthCT");
    const int n = 1000;
    std::vector<double> area(n), noise(n);
    for (int i = 0; i < n; ++i) {
        auto c = sample_content(static_cast<uint64_t>(5000 + i), cfg);
        auto s = sample_style(c, d, static_cast<uint64_t>(i));
        area[static_cast<size_t>(i)] = foreground_area(c);
        noise[static_cast<size_t>(i)] = s.noise_std;
    }
    double ma = 0, mn = 0;
    for (int i = 0; i < n; ++i) {
        ma += area[static_cast<size_t>(i)] / n;
        mn += noise[static_cast<size_t>(i)] / n;
    }
    double cov = 0, va = 0, vn = 0;
    for (int i = 0; i < n; ++i) {
        double da = area[static_cast<size_t>(i)] - ma, dn = noise[static_cast<size_t>(i)] - mn;
        cov += da * dn;
        va += da * da;
        vn += dn * dn;
    }
    double corr = cov / std::sqrt(va * vn);
    CHECK(corr > 0.0);  // coupling coefficient is positive for builtins
}

TEST_CASE("domain separation: 1-NN on histograms > 0.9 over held-out samples") {
    auto cfg = default_scene_config(5);
    auto domains = builtin_domains(5);

    std::vector<std::vector<double>> train_h;
    std::vector<int> train_y;
    std::vector<std::vector<double>> test_h;
    std::vector<int> test_y;

    for (size_t di = 0; di < domains.size(); ++di) {
        auto train = generate_domain(domains[di], cfg, 15, 4, 300 + di);
        auto held = generate_domain(domains[di], cfg, 13, 4, 900 + di);
        for (const auto& s : train) {
            train_h.push_back(image_histogram(s.image, 64));
            train_y.push_back(static_cast<int>(di));
        }
        for (size_t k = 0; k < 50; ++k) {
            test_h.push_back(image_histogram(held[k].image, 64));
            test_y.push_back(static_cast<int>(di));
        }
    }
    REQUIRE(test_h.size() == 200);

    int correct = 0;
    for (size_t i = 0; i < test_h.size(); ++i) {
        double best = 1e18;
        int pred = -1;
        for (size_t j = 0; j < train_h.size(); ++j) {
            double dist = 0.0;
            for (size_t b = 0; b < test_h[i].size(); ++b)
                dist += std::abs(test_h[i][b] - train_h[j][b]);
            if (dist < best) {
                best = dist;
                pred = train_y[j];
            }
        }
        correct += (pred == test_y[i]);
    }
    double acc = static_cast<double>(correct) / 200.0;
    INFO("1-NN domain accuracy: " << acc);
    CHECK(acc > 0.9);
}
