// Internal JSON (de)serialization helpers shared by the model store, the
// report writer and the experiment-config parser. Not part of the public
// headers.
#pragma once

#include <string>

#include "json.hpp"
#include "ramanmp/eval.hpp"
#include "ramanmp/preprocess.hpp"

namespace ramanmp::serde {

using nlohmann::json;

// Field lookup that names the missing/mistyped key instead of throwing
// nlohmann's generic type_error.
const json& require(const json& j, const std::string& key,
                    const std::string& where);

nlohmann::json pipeline_json(const PipelineConfig& cfg);
PipelineConfig pipeline_from_json(const json& j, PipelineConfig defaults,
                                  const std::string& where);

nlohmann::json augment_plan_json(const AugmentPlan& plan);
AugmentPlan augment_plan_from_json(const json& j, AugmentPlan defaults,
                                   const std::string& where);

nlohmann::json model_config_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const json& j, ModelConfig defaults,
                                   const std::string& where);

nlohmann::json run_spec_json(const RunSpec& spec);
RunSpec run_spec_from_json(const json& j, RunSpec defaults,
                           const std::string& where);

PolymerType polymer_from_json(const json& j, const std::string& where);

}  // namespace ramanmp::serde
