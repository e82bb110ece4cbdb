#pragma once

#include <filesystem>
#include <variant>

#include "ramanmp/models.hpp"
#include "ramanmp/preprocess.hpp"

namespace ramanmp {

// A trained model plus the exact feature pipeline it was trained with, so a
// raw spectrum can be pushed through the identical stages at predict time.
struct ModelBundle {
    std::variant<DecisionTree, RandomForestModel, KnnModel> model;
    PipelineConfig pipeline;

    PolymerType predict(std::span<const double> x) const;
    std::vector<double> vote_fractions(std::span<const double> x) const;
    const std::vector<PolymerType>& classes() const;
    std::size_t n_features() const;
};

inline constexpr int kModelFormatVersion = 1;

// JSON, format_version pinned; doubles round-trip exactly, so a reloaded
// model reproduces predictions bit for bit. Loading rejects any other
// format_version with a ConfigError naming both versions.
void save_model(const ModelBundle& bundle, const std::filesystem::path& file);
ModelBundle load_model(const std::filesystem::path& file);

}  // namespace ramanmp
