#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ramanmp/dataset.hpp"
#include "ramanmp/eval.hpp"

namespace ramanmp {

inline constexpr int kConfigVersion = 1;

// The on-disk experiment description. Reproducibility contract: every run
// writes its fully resolved config next to its outputs, and re-running from
// that file reproduces the outputs byte for byte.
struct ExperimentConfig {
    std::string experiment;  // ablation | bin-sweep | noise-sweep | final | custom
    std::filesystem::path slopp_dir;
    std::filesystem::path sloppe_dir;
    std::filesystem::path mendeley_dir;
    std::filesystem::path synonyms_file;  // optional extra label mappings

    RunSpec spec;
    std::uint64_t seed = 1;  // always explicit, never drawn from entropy
    std::size_t n_seeds = 10;

    std::vector<int> sweep_widths;         // bin-sweep only
    std::vector<double> sweep_amplitudes;  // noise-sweep only

    std::filesystem::path output_dir = "out";
    std::filesystem::path export_augmented_dir;  // optional audit dump

    void validate() const;  // throws ConfigError naming the offending field
};

// Throws ConfigError naming the field on schema violations (unknown
// experiment, bad version key, wrong types, out-of-range values).
ExperimentConfig parse_experiment_config(const std::filesystem::path& file);
ExperimentConfig parse_experiment_config_text(const std::string& text);

// Canonical JSON form with every field spelled out.
std::string resolved_config_json(const ExperimentConfig& cfg);

// Loads the three libraries and assembles train/test. Load reports (one
// JSONL per library) land in report_dir when non-empty.
std::pair<LabeledDataset, LabeledDataset> load_experiment_data(
    const ExperimentConfig& cfg, const std::filesystem::path& report_dir = {});

}  // namespace ramanmp
