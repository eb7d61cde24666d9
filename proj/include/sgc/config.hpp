#pragma once

#include <json.hpp>

#include "sgc/experiments.hpp"
#include "sgc/pipeline.hpp"
#include "sgc/ssbm.hpp"

namespace sgc {

/// Flat SSBM params object {n, k, sizes|rho, p, eta, seed}; seed (default 0)
/// is returned separately and also drives sizes_from_rho when rho is given.
SsbmParams ssbm_params_from_json(const nlohmann::json& j, uint64_t* seed_out);

SsbmSpec ssbm_spec_from_json(const nlohmann::json& j);

/// Pipeline settings; unknown keys are rejected, absent keys keep defaults.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);

/// Grid axis: either an explicit array of values, or
/// {min, max, count, scale: "log"|"linear", prepend_zero?: bool}.
std::vector<double> axis_from_json(const nlohmann::json& j);

GridSpec grid_spec_from_json(const nlohmann::json& j, bool gamma_mode);
CurveSpec curve_spec_from_json(const nlohmann::json& j);
CompareSpec compare_spec_from_json(const nlohmann::json& j);

}  // namespace sgc
