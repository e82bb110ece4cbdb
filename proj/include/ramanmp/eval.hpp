#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ramanmp/augment.hpp"
#include "ramanmp/dataset.hpp"
#include "ramanmp/model_io.hpp"
#include "ramanmp/models.hpp"
#include "ramanmp/preprocess.hpp"

namespace ramanmp {

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

double accuracy(std::span<const PolymerType> preds,
                std::span<const PolymerType> actual);

// rows = actual, columns = predicted.
struct ConfusionMatrix {
    std::vector<PolymerType> classes;
    std::vector<std::vector<std::size_t>> counts;

    std::size_t total() const;
    double accuracy() const;  // trace / total
};

ConfusionMatrix confusion(std::span<const PolymerType> preds,
                          std::span<const PolymerType> actual,
                          std::span<const PolymerType> classes);

// diagonal / row sum, for classes that actually occur.
std::map<PolymerType, double> per_class_recall(const ConfusionMatrix& cm);

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

struct ModelConfig {
    enum class Kind { kRandomForest, kDecisionTree, kKnn };

    Kind kind = Kind::kRandomForest;
    SplitCriterion criterion = SplitCriterion::kInformationGain;
    ForestParams forest;
    std::size_t knn_k = 3;
};

std::string_view model_kind_name(ModelConfig::Kind kind);
ModelConfig::Kind model_kind_from_name(std::string_view name);

struct AugmentPlan {
    bool enabled = false;
    AugmentParams params;
    std::vector<AugmentTarget> targets;
};

// Everything one run needs besides data and seed.
struct RunSpec {
    PipelineConfig pipeline;
    AugmentPlan augment;
    ModelConfig model;
};

// The paper's winning configuration: 0..3500 scaling, ROC, bin width 12, no
// y rescaling, the six-class augmentation recipe, RF with information gain.
RunSpec final_recipe();
std::vector<AugmentTarget> fifteen_sample_targets();  // the bin-sweep recipe
std::vector<AugmentTarget> final_augment_targets();

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

struct EvalContext {
    const LabeledDataset& train;
    const LabeledDataset& test;
    int jobs = 1;
};

struct RunResult {
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    ConfusionMatrix confusion;
    std::vector<std::string> misclassified_ids;
    double wall_seconds = 0.0;  // informational; kept out of serialized reports
};

// One (preprocess -> augment -> train -> evaluate) pass. Noise, if any,
// touches training spectra only. Augmentation operates on the scaled dense
// grid, before the transform. All stage generators derive from `seed`, so
// the result is a pure function of (data, spec, seed). When out_model is
// given it receives the trained model plus the resolved predict pipeline.
RunResult run_once(const EvalContext& ctx, const RunSpec& spec,
                   std::uint64_t seed, ModelBundle* out_model = nullptr);

// The exact training set run_once(ctx, spec, seed) trains on: scaled to the
// dense grid when the pipeline scales, topped up per the augment plan when
// enabled (otherwise returned as-is). Exposed for audit exports.
LabeledDataset augmented_training_set(const EvalContext& ctx, const RunSpec& spec,
                                      std::uint64_t seed);

// One named configuration evaluated over a seed ensemble.
struct VariantReport {
    std::string name;
    RunSpec spec;
    std::vector<RunResult> runs;
    double mean_accuracy = 0.0;
    std::vector<std::string> notes;
};

VariantReport run_ensemble(const EvalContext& ctx, std::string name,
                           const RunSpec& spec,
                           std::span<const std::uint64_t> seeds);

std::vector<std::uint64_t> ensemble_seeds(std::uint64_t base, std::size_t n);

// ---------------------------------------------------------------------------
// The paper's experiment grid
// ---------------------------------------------------------------------------

// Four (x-scaling x ROC) combinations, unbinned and unaugmented. Unscaled
// variants truncate raw spectra to the shortest common length; the
// interpretation is recorded in the report notes.
std::vector<VariantReport> run_ablation(const EvalContext& ctx,
                                        const RunSpec& base,
                                        std::span<const std::uint64_t> seeds);

// One variant per bin width.
std::vector<VariantReport> sweep_bins(const EvalContext& ctx, const RunSpec& base,
                                      std::span<const int> widths,
                                      std::span<const std::uint64_t> seeds);

// One variant per amplitude; noise hits the training set only.
std::vector<VariantReport> sweep_noise(const EvalContext& ctx,
                                       const RunSpec& base,
                                       std::span<const double> amplitudes,
                                       std::span<const std::uint64_t> seeds);

VariantReport run_final(const EvalContext& ctx,
                        std::span<const std::uint64_t> seeds,
                        ModelBundle* out_model = nullptr);

// RF vs DT vs KNN on the same features (base normally = final_recipe()).
std::vector<VariantReport> run_model_comparison(const EvalContext& ctx,
                                                const RunSpec& base,
                                                std::span<const std::uint64_t> seeds);

// ---------------------------------------------------------------------------
// Report output
// ---------------------------------------------------------------------------

// Deterministic payload: identical data + spec + seeds give identical bytes.
// Wall times never enter this string.
std::string report_json(std::string_view experiment,
                        std::span<const VariantReport> variants);

void write_report_json(const std::filesystem::path& file,
                       std::string_view experiment,
                       std::span<const VariantReport> variants);

// Plot-ready table: one row per variant, param column + per-seed accuracies
// + mean.
void write_sweep_csv(const std::filesystem::path& file,
                     std::span<const VariantReport> variants,
                     std::string_view param_name,
                     std::span<const std::string> param_values);

void write_confusion_csv(const std::filesystem::path& file,
                         const ConfusionMatrix& cm);

}  // namespace ramanmp
