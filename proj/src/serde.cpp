#include "serde.hpp"

namespace ramanmp::serde {

namespace {

// Narrow typed getters so every schema violation names its field.
double as_double(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

std::int64_t as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

std::size_t as_size(const json& j, const std::string& where) {
    const std::int64_t v = as_int(j, where);
    if (v < 0) throw ConfigError(where + ": must be >= 0");
    return static_cast<std::size_t>(v);
}

bool as_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) throw ConfigError(where + ": expected true/false");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where + ": expected a string");
    return j.get<std::string>();
}

}  // namespace

const json& require(const json& j, const std::string& key,
                    const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + ": missing key '" + key + "'");
    return *it;
}

PolymerType polymer_from_json(const json& j, const std::string& where) {
    const std::string name = as_string(j, where);
    const auto type = polymer_from_canonical(name);
    if (!type) throw ConfigError(where + ": unknown polymer type '" + name + "'");
    return *type;
}

// ---------------------------------------------------------------------------
// PipelineConfig
// ---------------------------------------------------------------------------

json pipeline_json(const PipelineConfig& cfg) {
    return json{
        {"scale_x", cfg.scale_x},
        {"min_range", cfg.min_range},
        {"max_range", cfg.max_range},
        {"transform", std::string(transform_name(cfg.transform))},
        {"pc_window", cfg.pc_window},
        {"bin_width", cfg.bin_width},
        {"noise_amplitude", cfg.noise_amplitude},
        {"shift_positive", cfg.shift_positive},
        {"raw_truncate_len", cfg.raw_truncate_len},
    };
}

PipelineConfig pipeline_from_json(const json& j, PipelineConfig cfg,
                                  const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string at = where + "." + key;
        if (key == "scale_x") {
            cfg.scale_x = as_bool(value, at);
        } else if (key == "min_range") {
            cfg.min_range = static_cast<int>(as_int(value, at));
        } else if (key == "max_range") {
            cfg.max_range = static_cast<int>(as_int(value, at));
        } else if (key == "transform") {
            cfg.transform = transform_from_name(as_string(value, at));
        } else if (key == "pc_window") {
            cfg.pc_window = static_cast<int>(as_int(value, at));
        } else if (key == "bin_width") {
            cfg.bin_width = static_cast<int>(as_int(value, at));
        } else if (key == "noise_amplitude") {
            cfg.noise_amplitude = as_double(value, at);
        } else if (key == "shift_positive") {
            cfg.shift_positive = as_bool(value, at);
        } else if (key == "raw_truncate_len") {
            cfg.raw_truncate_len = as_size(value, at);
        } else {
            throw ConfigError(at + ": unknown key");
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// AugmentPlan
// ---------------------------------------------------------------------------

json augment_plan_json(const AugmentPlan& plan) {
    json targets = json::array();
    for (const auto& t : plan.targets)
        targets.push_back({{"type", std::string(canonical_name(t.type))},
                           {"min_examples", t.min_examples}});
    return json{
        {"enabled", plan.enabled},
        {"random_change", plan.params.random_change},
        {"shift", plan.params.shift},
        {"max_pct_change", plan.params.max_pct_change},
        {"targets", targets},
    };
}

AugmentPlan augment_plan_from_json(const json& j, AugmentPlan plan,
                                   const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string at = where + "." + key;
        if (key == "enabled") {
            plan.enabled = as_bool(value, at);
        } else if (key == "random_change") {
            plan.params.random_change = as_double(value, at);
        } else if (key == "shift") {
            plan.params.shift = as_double(value, at);
        } else if (key == "max_pct_change") {
            plan.params.max_pct_change = as_double(value, at);
        } else if (key == "targets") {
            if (!value.is_array()) throw ConfigError(at + ": expected an array");
            plan.targets.clear();
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string slot = at + "[" + std::to_string(i) + "]";
                const json& entry = value[i];
                if (!entry.is_object())
                    throw ConfigError(slot + ": expected an object");
                AugmentTarget target{
                    polymer_from_json(require(entry, "type", slot),
                                      slot + ".type"),
                    as_size(require(entry, "min_examples", slot),
                            slot + ".min_examples")};
                plan.targets.push_back(target);
            }
        } else {
            throw ConfigError(at + ": unknown key");
        }
    }
    return plan;
}

// ---------------------------------------------------------------------------
// ModelConfig
// ---------------------------------------------------------------------------

json model_config_json(const ModelConfig& cfg) {
    json j{
        {"kind", std::string(model_kind_name(cfg.kind))},
        {"criterion", std::string(criterion_name(cfg.criterion))},
        {"n_trees", cfg.forest.n_trees},
        {"max_depth", cfg.forest.tree.max_depth},
        {"min_samples_split", cfg.forest.tree.min_samples_split},
        {"min_samples_leaf", cfg.forest.tree.min_samples_leaf},
        {"bootstrap", cfg.forest.bootstrap},
        {"knn_k", cfg.knn_k},
    };
    if (cfg.forest.feature_subsample.has_value())
        j["feature_subsample"] = *cfg.forest.feature_subsample;
    else
        j["feature_subsample"] = "sqrt";
    return j;
}

ModelConfig model_config_from_json(const json& j, ModelConfig cfg,
                                   const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string at = where + "." + key;
        if (key == "kind") {
            cfg.kind = model_kind_from_name(as_string(value, at));
        } else if (key == "criterion") {
            cfg.criterion = criterion_from_name(as_string(value, at));
        } else if (key == "n_trees") {
            cfg.forest.n_trees = as_size(value, at);
        } else if (key == "max_depth") {
            cfg.forest.tree.max_depth = as_size(value, at);
        } else if (key == "min_samples_split") {
            cfg.forest.tree.min_samples_split = as_size(value, at);
        } else if (key == "min_samples_leaf") {
            cfg.forest.tree.min_samples_leaf = as_size(value, at);
        } else if (key == "bootstrap") {
            cfg.forest.bootstrap = as_bool(value, at);
        } else if (key == "feature_subsample") {
            if (value.is_string()) {
                if (value.get<std::string>() != "sqrt")
                    throw ConfigError(at + ": expected \"sqrt\" or an integer");
                cfg.forest.feature_subsample.reset();
            } else {
                cfg.forest.feature_subsample = as_size(value, at);
            }
        } else if (key == "knn_k") {
            cfg.knn_k = as_size(value, at);
        } else {
            throw ConfigError(at + ": unknown key");
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// RunSpec
// ---------------------------------------------------------------------------

json run_spec_json(const RunSpec& spec) {
    return json{
        {"pipeline", pipeline_json(spec.pipeline)},
        {"augment", augment_plan_json(spec.augment)},
        {"model", model_config_json(spec.model)},
    };
}

RunSpec run_spec_from_json(const json& j, RunSpec spec,
                           const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string at = where + "." + key;
        if (key == "pipeline") {
            spec.pipeline = pipeline_from_json(value, spec.pipeline, at);
        } else if (key == "augment") {
            spec.augment = augment_plan_from_json(value, spec.augment, at);
        } else if (key == "model") {
            spec.model = model_config_from_json(value, spec.model, at);
        } else {
            throw ConfigError(at + ": unknown key");
        }
    }
    return spec;
}

}  // namespace ramanmp::serde
