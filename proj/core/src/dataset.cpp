#include "styleseg/dataset.hpp"

#include <cstdio>

#include "styleseg/errors.hpp"
#include "styleseg/io.hpp"
#include "styleseg/json_conv.hpp"
#include "styleseg/npy.hpp"

namespace styleseg {

namespace {
std::string sample_stem(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%05d", i);
    return buf;
}
}  // namespace

Dataset make_dataset(const DomainSpec& domain, const SceneConfig& scene, int n_volumes,
                     int slices_per_volume, uint64_t seed, int grid) {
    Dataset ds;
    ds.domain = domain;
    ds.scene = scene;
    ds.seed = seed;
    ds.n_volumes = n_volumes;
    ds.slices_per_volume = slices_per_volume;
    ds.grid = grid;
    ds.samples = generate_domain(domain, scene, n_volumes, slices_per_volume, seed, grid);
    return ds;
}

void save_dataset(const fs::path& dir, const Dataset& ds) {
    fs::create_directories(dir);

    json samples = json::array();
    for (size_t i = 0; i < ds.samples.size(); ++i) {
        const auto& s = ds.samples[i];
        std::string stem = sample_stem(static_cast<int>(i));
        npy_save(dir / (stem + "_img.npy"), s.image);
        npy_save(dir / (stem + "_msk.npy"), s.mask);
        samples.push_back(json{{"image", stem + "_img.npy"},
                               {"mask", stem + "_msk.npy"},
                               {"volume_id", s.volume_id},
                               {"slice_index", s.slice_index},
                               {"content", s.content},
                               {"style", s.style}});
    }

    json manifest{{"format_version", 1},
                  {"domain", ds.domain},
                  {"scene", ds.scene},
                  {"seed", ds.seed},
                  {"n_volumes", ds.n_volumes},
                  {"slices_per_volume", ds.slices_per_volume},
                  {"grid", ds.grid},
                  {"samples", samples}};
    atomic_write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Dataset load_dataset(const fs::path& dir) {
    fs::path mpath = dir / "manifest.json";
    if (!fs::exists(mpath)) throw DataError("no manifest.json in " + dir.string());
    json manifest = json::parse(read_file(mpath));
    if (manifest.at("format_version").get<int>() != 1)
        throw DataError("unsupported dataset format version in " + mpath.string());

    Dataset ds;
    manifest.at("domain").get_to(ds.domain);
    manifest.at("scene").get_to(ds.scene);
    manifest.at("seed").get_to(ds.seed);
    manifest.at("n_volumes").get_to(ds.n_volumes);
    manifest.at("slices_per_volume").get_to(ds.slices_per_volume);
    manifest.at("grid").get_to(ds.grid);

    for (const auto& rec : manifest.at("samples")) {
        SceneSample s;
        s.image = npy_load<float>(dir / rec.at("image").get<std::string>());
        s.mask = npy_load<uint8_t>(dir / rec.at("mask").get<std::string>());
        rec.at("volume_id").get_to(s.volume_id);
        rec.at("slice_index").get_to(s.slice_index);
        rec.at("content").get_to(s.content);
        rec.at("style").get_to(s.style);
        s.domain = ds.domain.name;
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

}  // namespace styleseg
