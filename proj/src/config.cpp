#include "ramanmp/config.hpp"

#include <fstream>
#include <set>

#include "serde.hpp"

namespace ramanmp {

using nlohmann::json;

namespace {

const std::set<std::string>& known_experiments() {
    static const std::set<std::string> kinds{
        "ablation", "bin-sweep", "noise-sweep", "final", "compare", "custom"};
    return kinds;
}

std::vector<int> widths_from_json(const json& j, const std::string& where) {
    std::vector<int> widths;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string at = where + "[" + std::to_string(i) + "]";
            if (!j[i].is_number_integer())
                throw ConfigError(at + ": expected an integer");
            widths.push_back(j[i].get<int>());
        }
    } else if (j.is_object()) {
        const json& from = serde::require(j, "from", where);
        const json& to = serde::require(j, "to", where);
        if (!from.is_number_integer() || !to.is_number_integer())
            throw ConfigError(where + ": from/to must be integers");
        for (int w = from.get<int>(); w <= to.get<int>(); ++w)
            widths.push_back(w);
    } else {
        throw ConfigError(where + ": expected an array or {from, to}");
    }
    for (const int w : widths)
        if (w < 1) throw ConfigError(where + ": widths must be >= 1");
    if (widths.empty()) throw ConfigError(where + ": empty width range");
    return widths;
}

std::vector<double> amplitudes_from_json(const json& j,
                                         const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    std::vector<double> amps;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_number()) throw ConfigError(at + ": expected a number");
        amps.push_back(j[i].get<double>());
        if (amps.back() < 0.0) throw ConfigError(at + ": must be >= 0");
    }
    if (amps.empty()) throw ConfigError(where + ": empty amplitude list");
    return amps;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!known_experiments().contains(experiment))
        throw ConfigError(
            "experiment: unknown value '" + experiment +
            "' (expected ablation|bin-sweep|noise-sweep|final|compare|custom)");
    if (slopp_dir.empty()) throw ConfigError("data.slopp: path required");
    if (sloppe_dir.empty()) throw ConfigError("data.sloppe: path required");
    if (mendeley_dir.empty()) throw ConfigError("data.mendeley: path required");
    if (n_seeds < 1) throw ConfigError("n_seeds: must be >= 1");
    spec.pipeline.validate();
    if (spec.augment.enabled) spec.augment.params.validate();
    if (experiment == "bin-sweep" && sweep_widths.empty())
        throw ConfigError("sweep.widths: required for a bin-sweep");
    if (experiment == "noise-sweep" && sweep_amplitudes.empty())
        throw ConfigError("sweep.amplitudes: required for a noise-sweep");
    if (output_dir.empty()) throw ConfigError("output_dir: path required");
}

ExperimentConfig parse_experiment_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");

    const json& version = serde::require(j, "config_version", "config");
    if (!version.is_number_integer() || version.get<int>() != kConfigVersion)
        throw ConfigError("config_version: " + version.dump() +
                          " unsupported (this build reads version " +
                          std::to_string(kConfigVersion) + ")");

    ExperimentConfig cfg;
    cfg.spec = final_recipe();  // every field overridable below
    for (const auto& [key, value] : j.items()) {
        if (key == "config_version") {
            continue;
        } else if (key == "experiment") {
            if (!value.is_string())
                throw ConfigError("experiment: expected a string");
            cfg.experiment = value.get<std::string>();
        } else if (key == "data") {
            if (!value.is_object())
                throw ConfigError("data: expected an object");
            for (const auto& [dkey, dvalue] : value.items()) {
                if (!dvalue.is_string())
                    throw ConfigError("data." + dkey + ": expected a string");
                if (dkey == "slopp")
                    cfg.slopp_dir = dvalue.get<std::string>();
                else if (dkey == "sloppe")
                    cfg.sloppe_dir = dvalue.get<std::string>();
                else if (dkey == "mendeley")
                    cfg.mendeley_dir = dvalue.get<std::string>();
                else if (dkey == "synonyms")
                    cfg.synonyms_file = dvalue.get<std::string>();
                else
                    throw ConfigError("data." + dkey + ": unknown key");
            }
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !value.is_number_integer())
                throw ConfigError("seed: expected an integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "n_seeds") {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                throw ConfigError("n_seeds: expected a non-negative integer");
            cfg.n_seeds = value.get<std::size_t>();
        } else if (key == "pipeline") {
            cfg.spec.pipeline =
                serde::pipeline_from_json(value, cfg.spec.pipeline, "pipeline");
        } else if (key == "augment") {
            cfg.spec.augment =
                serde::augment_plan_from_json(value, cfg.spec.augment, "augment");
        } else if (key == "model") {
            cfg.spec.model =
                serde::model_config_from_json(value, cfg.spec.model, "model");
        } else if (key == "sweep") {
            if (!value.is_object())
                throw ConfigError("sweep: expected an object");
            for (const auto& [skey, svalue] : value.items()) {
                if (skey == "widths")
                    cfg.sweep_widths = widths_from_json(svalue, "sweep.widths");
                else if (skey == "amplitudes")
                    cfg.sweep_amplitudes =
                        amplitudes_from_json(svalue, "sweep.amplitudes");
                else
                    throw ConfigError("sweep." + skey + ": unknown key");
            }
        } else if (key == "output_dir") {
            if (!value.is_string())
                throw ConfigError("output_dir: expected a string");
            cfg.output_dir = value.get<std::string>();
        } else if (key == "export_augmented_dir") {
            if (!value.is_string())
                throw ConfigError("export_augmented_dir: expected a string");
            cfg.export_augmented_dir = value.get<std::string>();
        } else {
            throw ConfigError(key + ": unknown key");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_experiment_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open config file: " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    try {
        return parse_experiment_config_text(text);
    } catch (const ConfigError& e) {
        throw ConfigError(file.string() + ": " + e.what());
    } catch (const FormatError& e) {
        throw FormatError(file.string() + ": " + e.what());
    }
}

std::string resolved_config_json(const ExperimentConfig& cfg) {
    json data{{"slopp", cfg.slopp_dir.string()},
              {"sloppe", cfg.sloppe_dir.string()},
              {"mendeley", cfg.mendeley_dir.string()}};
    if (!cfg.synonyms_file.empty())
        data["synonyms"] = cfg.synonyms_file.string();

    json j{{"config_version", kConfigVersion},
           {"experiment", cfg.experiment},
           {"data", std::move(data)},
           {"seed", cfg.seed},
           {"n_seeds", cfg.n_seeds},
           {"pipeline", serde::pipeline_json(cfg.spec.pipeline)},
           {"augment", serde::augment_plan_json(cfg.spec.augment)},
           {"model", serde::model_config_json(cfg.spec.model)},
           {"output_dir", cfg.output_dir.string()}};
    if (!cfg.sweep_widths.empty() || !cfg.sweep_amplitudes.empty()) {
        json sweep = json::object();
        if (!cfg.sweep_widths.empty()) sweep["widths"] = cfg.sweep_widths;
        if (!cfg.sweep_amplitudes.empty())
            sweep["amplitudes"] = cfg.sweep_amplitudes;
        j["sweep"] = std::move(sweep);
    }
    if (!cfg.export_augmented_dir.empty())
        j["export_augmented_dir"] = cfg.export_augmented_dir.string();
    return j.dump(2) + "\n";
}

std::pair<LabeledDataset, LabeledDataset> load_experiment_data(
    const ExperimentConfig& cfg, const std::filesystem::path& report_dir) {
    SynonymTable synonyms = SynonymTable::builtin();
    if (!cfg.synonyms_file.empty())
        synonyms.merge(SynonymTable::from_csv(cfg.synonyms_file));

    const struct {
        const std::filesystem::path& dir;
        SourceKind kind;
    } libraries[] = {
        {cfg.slopp_dir, SourceKind::kSlopp},
        {cfg.sloppe_dir, SourceKind::kSloppE},
        {cfg.mendeley_dir, SourceKind::kMendeley},
    };

    std::vector<LabeledDataset> loaded;
    for (const auto& lib : libraries) {
        LoadReport report;
        loaded.push_back(load_library(lib.dir, lib.kind, &report, &synonyms));
        if (!report_dir.empty()) {
            std::filesystem::create_directories(report_dir);
            const auto file =
                report_dir / ("load_" + std::string(source_name(lib.kind)) +
                              ".jsonl");
            std::ofstream out(file);
            if (!out)
                throw DataError("cannot write load report: " + file.string());
            report.write_jsonl(out);
        }
    }
    return assemble_train_test(loaded[0], loaded[2], loaded[1]);
}

}  // namespace ramanmp
