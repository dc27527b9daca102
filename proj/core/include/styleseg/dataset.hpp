#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "styleseg/scm.hpp"

namespace styleseg {

namespace fs = std::filesystem;

// On-disk layout, one directory per domain:
//   manifest.json   domain spec, scene config, seed, counts, per-sample records
//   sNNNNN_img.npy  float32 (H, W)
//   sNNNNN_msk.npy  uint8   (H, W)
struct Dataset {
    DomainSpec domain;
    SceneConfig scene;
    uint64_t seed = 0;
    int n_volumes = 0;
    int slices_per_volume = 0;
    int grid = kDefaultGrid;
    std::vector<SceneSample> samples;
};

void save_dataset(const fs::path& dir, const Dataset& ds);
Dataset load_dataset(const fs::path& dir);

Dataset make_dataset(const DomainSpec& domain, const SceneConfig& scene, int n_volumes,
                     int slices_per_volume, uint64_t seed, int grid = kDefaultGrid);

}  // namespace styleseg
