#include "ramanmp/eval.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <set>

#include "serde.hpp"

namespace ramanmp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

double accuracy(std::span<const PolymerType> preds,
                std::span<const PolymerType> actual) {
    if (preds.size() != actual.size())
        throw DataError("accuracy: prediction/label count mismatch");
    if (preds.empty()) throw DataError("accuracy: empty prediction set");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        hits += preds[i] == actual[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(preds.size());
}

std::size_t ConfusionMatrix::total() const {
    std::size_t sum = 0;
    for (const auto& row : counts)
        for (std::size_t c : row) sum += c;
    return sum;
}

double ConfusionMatrix::accuracy() const {
    const std::size_t n = total();
    if (n == 0) throw DataError("confusion matrix is empty");
    std::size_t trace = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) trace += counts[i][i];
    return static_cast<double>(trace) / static_cast<double>(n);
}

ConfusionMatrix confusion(std::span<const PolymerType> preds,
                          std::span<const PolymerType> actual,
                          std::span<const PolymerType> classes) {
    if (preds.size() != actual.size())
        throw DataError("confusion: prediction/label count mismatch");
    ConfusionMatrix cm;
    cm.classes.assign(classes.begin(), classes.end());
    cm.counts.assign(classes.size(), std::vector<std::size_t>(classes.size(), 0));
    std::array<int, kPolymerTypeCount> index;
    index.fill(-1);
    for (std::size_t i = 0; i < cm.classes.size(); ++i)
        index[static_cast<std::size_t>(cm.classes[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const int r = index[static_cast<std::size_t>(actual[i])];
        const int c = index[static_cast<std::size_t>(preds[i])];
        if (r < 0 || c < 0)
            throw DataError("confusion: label outside the supplied class list");
        ++cm.counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return cm;
}

std::map<PolymerType, double> per_class_recall(const ConfusionMatrix& cm) {
    std::map<PolymerType, double> out;
    for (std::size_t i = 0; i < cm.classes.size(); ++i) {
        std::size_t row = 0;
        for (std::size_t c : cm.counts[i]) row += c;
        if (row == 0) continue;  // class absent from the evaluated set
        out[cm.classes[i]] =
            static_cast<double>(cm.counts[i][i]) / static_cast<double>(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Configuration helpers
// ---------------------------------------------------------------------------

std::string_view model_kind_name(ModelConfig::Kind kind) {
    switch (kind) {
        case ModelConfig::Kind::kRandomForest: return "random_forest";
        case ModelConfig::Kind::kDecisionTree: return "decision_tree";
        case ModelConfig::Kind::kKnn: return "knn";
    }
    throw Error("unreachable model kind");
}

ModelConfig::Kind model_kind_from_name(std::string_view name) {
    if (name == "random_forest") return ModelConfig::Kind::kRandomForest;
    if (name == "decision_tree") return ModelConfig::Kind::kDecisionTree;
    if (name == "knn") return ModelConfig::Kind::kKnn;
    throw ConfigError("unknown model kind '" + std::string(name) +
                      "' (expected random_forest|decision_tree|knn)");
}

std::vector<AugmentTarget> fifteen_sample_targets() {
    return {
        {PolymerType::kCelluloseAcetate, 15},
        {PolymerType::kPolyamide, 15},
        {PolymerType::kPolymethylMethacrylate, 15},
        {PolymerType::kPolyurethane, 15},
    };
}

std::vector<AugmentTarget> final_augment_targets() {
    return {
        {PolymerType::kCelluloseAcetate, 30},
        {PolymerType::kPolyamide, 30},
        {PolymerType::kPolyester, 40},
        {PolymerType::kPolymethylMethacrylate, 10},
        {PolymerType::kPolystyrene, 20},
        {PolymerType::kPolyurethane, 30},
    };
}

RunSpec final_recipe() {
    RunSpec spec;
    spec.pipeline = PipelineConfig{};  // 0..3500 scaling, ROC, bin width 12
    spec.augment.enabled = true;
    spec.augment.params = AugmentParams{};
    spec.augment.targets = final_augment_targets();
    spec.model.kind = ModelConfig::Kind::kRandomForest;
    spec.model.criterion = SplitCriterion::kInformationGain;
    spec.model.forest = ForestParams{};
    return spec;
}

// ---------------------------------------------------------------------------
// Single run
// ---------------------------------------------------------------------------

namespace {

// Independent generator streams per stage, all derived from the run seed.
constexpr std::uint64_t kStreamAugment = 0;
constexpr std::uint64_t kStreamTrainFeatures = 1;
constexpr std::uint64_t kStreamTestFeatures = 2;
constexpr std::uint64_t kStreamModel = 3;

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Replaces every spectrum by its dense-grid version so augmentation sees the
// same series the feature stages will.
LabeledDataset scale_to_grid(const LabeledDataset& ds, int min_range,
                             int max_range) {
    LabeledDataset out(ds.source());
    for (const auto& [type, samples] : ds.entries()) {
        for (const Sample& s : samples) {
            const ScaledSpectrum scaled = scale_x(s.spectrum, min_range, max_range);
            Sample dense = s;
            dense.spectrum.intensities = scaled.values;
            dense.spectrum.wavenumbers.resize(scaled.values.size());
            for (std::size_t i = 0; i < scaled.values.size(); ++i)
                dense.spectrum.wavenumbers[i] =
                    static_cast<double>(scaled.wavenumber_at(i));
            out.add(type, std::move(dense));
        }
    }
    return out;
}

void validate_spec(const RunSpec& spec) {
    spec.pipeline.validate();
    if (spec.augment.enabled) {
        spec.augment.params.validate();
        if (spec.augment.targets.empty())
            throw ConfigError("augment.targets: enabled but empty");
    }
    if (spec.model.kind == ModelConfig::Kind::kRandomForest &&
        spec.model.forest.n_trees < 1)
        throw ConfigError("model.n_trees: must be >= 1");
    if (spec.model.kind == ModelConfig::Kind::kKnn && spec.model.knn_k < 1)
        throw ConfigError("model.knn_k: must be >= 1");
}

}  // namespace

std::vector<std::uint64_t> ensemble_seeds(std::uint64_t base, std::size_t n) {
    std::vector<std::uint64_t> seeds(n);
    for (std::size_t i = 0; i < n; ++i) seeds[i] = base + i;
    return seeds;
}

LabeledDataset augmented_training_set(const EvalContext& ctx,
                                      const RunSpec& spec, std::uint64_t seed) {
    if (!spec.augment.enabled) return ctx.train;
    // Augmentation happens on the dense grid, before the transform stages.
    const PipelineConfig& pl = spec.pipeline;
    if (pl.scale_x) {
        return generate_augmented(
            scale_to_grid(ctx.train, pl.min_range, pl.max_range),
            spec.augment.targets, spec.augment.params,
            derive_seed(seed, kStreamAugment));
    }
    return generate_augmented(ctx.train, spec.augment.targets,
                              spec.augment.params,
                              derive_seed(seed, kStreamAugment));
}

RunResult run_once(const EvalContext& ctx, const RunSpec& spec,
                   std::uint64_t seed, ModelBundle* out_model) {
    validate_spec(spec);
    const auto start = std::chrono::steady_clock::now();

    PipelineConfig pl = spec.pipeline;
    if (!pl.scale_x && pl.raw_truncate_len == 0) {
        const LabeledDataset* all[] = {&ctx.train, &ctx.test};
        pl.raw_truncate_len = common_raw_length(all);
    }

    const LabeledDataset* train = &ctx.train;
    LabeledDataset augmented;
    if (spec.augment.enabled) {
        augmented = augmented_training_set(ctx, spec, seed);
        train = &augmented;
    }

    const FeatureMatrix train_m = build_features(
        *train, pl, derive_seed(seed, kStreamTrainFeatures), ctx.jobs);
    PipelineConfig test_pl = pl;
    test_pl.noise_amplitude = 0.0;  // noise is a training-set treatment
    const FeatureMatrix test_m = build_features(
        ctx.test, test_pl, derive_seed(seed, kStreamTestFeatures), ctx.jobs);
    if (train_m.width() != test_m.width())
        throw DataError("train/test feature widths differ (" +
                        std::to_string(train_m.width()) + " vs " +
                        std::to_string(test_m.width()) + ")");

    const std::uint64_t model_seed = derive_seed(seed, kStreamModel);
    std::variant<DecisionTree, RandomForestModel, KnnModel> model;
    switch (spec.model.kind) {
        case ModelConfig::Kind::kRandomForest:
            model = train_forest(train_m, spec.model.criterion, spec.model.forest,
                                 model_seed, ctx.jobs);
            break;
        case ModelConfig::Kind::kDecisionTree: {
            Rng rng(model_seed);
            model = train_tree(train_m, spec.model.criterion,
                               spec.model.forest.tree, rng);
            break;
        }
        case ModelConfig::Kind::kKnn:
            model = KnnModel(train_m, spec.model.knn_k);
            break;
    }

    std::vector<PolymerType> preds(test_m.size());
    std::visit(
        [&](const auto& m) {
            for (std::size_t i = 0; i < test_m.size(); ++i)
                preds[i] = m.predict(test_m.rows[i]);
        },
        model);

    std::set<PolymerType> class_set(train_m.labels.begin(), train_m.labels.end());
    class_set.insert(test_m.labels.begin(), test_m.labels.end());
    const std::vector<PolymerType> classes(class_set.begin(), class_set.end());

    RunResult result;
    result.seed = seed;
    result.accuracy = accuracy(preds, test_m.labels);
    result.confusion = confusion(preds, test_m.labels, classes);
    for (std::size_t i = 0; i < preds.size(); ++i)
        if (preds[i] != test_m.labels[i])
            result.misclassified_ids.push_back(test_m.ids[i]);

    if (out_model != nullptr) {
        out_model->model = std::move(model);
        out_model->pipeline = test_pl;  // predict-time stages carry no noise
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

VariantReport run_ensemble(const EvalContext& ctx, std::string name,
                           const RunSpec& spec,
                           std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw ConfigError("n_seeds: must be >= 1");
    VariantReport report;
    report.name = std::move(name);
    report.spec = spec;
    double sum = 0.0;
    for (const std::uint64_t seed : seeds) {
        report.runs.push_back(run_once(ctx, spec, seed));
        sum += report.runs.back().accuracy;
    }
    report.mean_accuracy = sum / static_cast<double>(seeds.size());
    return report;
}

// ---------------------------------------------------------------------------
// Experiment grid
// ---------------------------------------------------------------------------

std::vector<VariantReport> run_ablation(const EvalContext& ctx,
                                        const RunSpec& base,
                                        std::span<const std::uint64_t> seeds) {
    RunSpec spec = base;
    spec.pipeline.bin_width = 1;  // this stage isolates scaling and transform
    spec.augment.enabled = false;

    const LabeledDataset* all[] = {&ctx.train, &ctx.test};
    const std::size_t raw_len = common_raw_length(all);
    const std::string raw_note =
        "unscaled spectra truncated to the shortest common length (" +
        std::to_string(raw_len) + " points)";

    struct Cell {
        const char* name;
        bool scale;
        Transform transform;
    };
    const Cell grid[] = {
        {"unscaled+none", false, Transform::kNone},
        {"unscaled+roc", false, Transform::kRoc},
        {"scaled+none", true, Transform::kNone},
        {"scaled+roc", true, Transform::kRoc},
    };

    std::vector<VariantReport> variants;
    for (const Cell& cell : grid) {
        RunSpec s = spec;
        s.pipeline.scale_x = cell.scale;
        s.pipeline.transform = cell.transform;
        if (!cell.scale) s.pipeline.raw_truncate_len = raw_len;
        VariantReport v = run_ensemble(ctx, cell.name, s, seeds);
        if (!cell.scale) v.notes.push_back(raw_note);
        variants.push_back(std::move(v));
    }
    return variants;
}

std::vector<VariantReport> sweep_bins(const EvalContext& ctx, const RunSpec& base,
                                      std::span<const int> widths,
                                      std::span<const std::uint64_t> seeds) {
    if (widths.empty()) throw ConfigError("sweep.widths: must not be empty");
    std::vector<VariantReport> variants;
    for (const int w : widths) {
        RunSpec s = base;
        s.pipeline.bin_width = w;
        variants.push_back(
            run_ensemble(ctx, "bin_width_" + std::to_string(w), s, seeds));
    }
    return variants;
}

std::vector<VariantReport> sweep_noise(const EvalContext& ctx,
                                       const RunSpec& base,
                                       std::span<const double> amplitudes,
                                       std::span<const std::uint64_t> seeds) {
    if (amplitudes.empty())
        throw ConfigError("sweep.amplitudes: must not be empty");
    std::vector<VariantReport> variants;
    for (const double a : amplitudes) {
        RunSpec s = base;
        s.pipeline.noise_amplitude = a;
        variants.push_back(run_ensemble(ctx, "noise_" + fmt(a), s, seeds));
    }
    return variants;
}

VariantReport run_final(const EvalContext& ctx,
                        std::span<const std::uint64_t> seeds,
                        ModelBundle* out_model) {
    if (seeds.empty()) throw ConfigError("n_seeds: must be >= 1");
    const RunSpec spec = final_recipe();
    VariantReport report;
    report.name = "final";
    report.spec = spec;
    double sum = 0.0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        // The shipped model comes from the first seed's run.
        report.runs.push_back(
            run_once(ctx, spec, seeds[i], i == 0 ? out_model : nullptr));
        sum += report.runs.back().accuracy;
    }
    report.mean_accuracy = sum / static_cast<double>(seeds.size());
    return report;
}

std::vector<VariantReport> run_model_comparison(
    const EvalContext& ctx, const RunSpec& base,
    std::span<const std::uint64_t> seeds) {
    const ModelConfig::Kind kinds[] = {ModelConfig::Kind::kRandomForest,
                                       ModelConfig::Kind::kDecisionTree,
                                       ModelConfig::Kind::kKnn};
    std::vector<VariantReport> variants;
    for (const auto kind : kinds) {
        RunSpec s = base;
        s.model.kind = kind;
        variants.push_back(
            run_ensemble(ctx, std::string(model_kind_name(kind)), s, seeds));
    }
    return variants;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

json confusion_json(const ConfusionMatrix& cm) {
    json classes = json::array();
    for (PolymerType t : cm.classes)
        classes.push_back(std::string(canonical_name(t)));
    return json{{"classes", classes}, {"counts", cm.counts}};
}

json run_json(const RunResult& run) {
    // wall_seconds stays out on purpose: reports must be byte-identical
    // across reruns.
    return json{{"seed", run.seed},
                {"accuracy", run.accuracy},
                {"misclassified", run.misclassified_ids},
                {"confusion", confusion_json(run.confusion)}};
}

}  // namespace

std::string report_json(std::string_view experiment,
                        std::span<const VariantReport> variants) {
    json jvariants = json::array();
    for (const VariantReport& v : variants) {
        json runs = json::array();
        for (const RunResult& r : v.runs) runs.push_back(run_json(r));
        jvariants.push_back({{"name", v.name},
                             {"spec", serde::run_spec_json(v.spec)},
                             {"notes", v.notes},
                             {"mean_accuracy", v.mean_accuracy},
                             {"runs", std::move(runs)}});
    }
    const json j{{"experiment", std::string(experiment)},
                 {"variants", std::move(jvariants)}};
    return j.dump(2) + "\n";
}

void write_report_json(const std::filesystem::path& file,
                       std::string_view experiment,
                       std::span<const VariantReport> variants) {
    std::ofstream out(file);
    if (!out) throw DataError("cannot write report: " + file.string());
    out << report_json(experiment, variants);
    if (!out) throw DataError("short write to report: " + file.string());
}

void write_sweep_csv(const std::filesystem::path& file,
                     std::span<const VariantReport> variants,
                     std::string_view param_name,
                     std::span<const std::string> param_values) {
    if (variants.size() != param_values.size())
        throw Error("sweep csv: one param value per variant required");
    std::ofstream out(file);
    if (!out) throw DataError("cannot write csv: " + file.string());
    out << param_name;
    if (!variants.empty())
        for (const RunResult& r : variants.front().runs)
            out << ",acc_seed_" << r.seed;
    out << ",mean\n";
    for (std::size_t i = 0; i < variants.size(); ++i) {
        out << param_values[i];
        for (const RunResult& r : variants[i].runs) out << ',' << fmt(r.accuracy);
        out << ',' << fmt(variants[i].mean_accuracy) << '\n';
    }
    if (!out) throw DataError("short write to csv: " + file.string());
}

void write_confusion_csv(const std::filesystem::path& file,
                         const ConfusionMatrix& cm) {
    std::ofstream out(file);
    if (!out) throw DataError("cannot write csv: " + file.string());
    out << "actual";
    for (PolymerType t : cm.classes) out << ',' << canonical_name(t);
    out << '\n';
    for (std::size_t i = 0; i < cm.classes.size(); ++i) {
        out << canonical_name(cm.classes[i]);
        for (std::size_t c : cm.counts[i]) out << ',' << c;
        out << '\n';
    }
    if (!out) throw DataError("short write to csv: " + file.string());
}

}  // namespace ramanmp
