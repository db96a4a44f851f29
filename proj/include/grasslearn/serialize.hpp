#pragma once

#include <json.hpp>

#include "grasslearn/gda.hpp"
#include "grasslearn/grnet.hpp"
#include "grasslearn/optim.hpp"

namespace grasslearn {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j, const std::string& what);

// Strict parsers: unknown or mistyped fields raise DataError naming the field.
OptimConfig optim_config_from_json(const Json& j);
Json optim_config_to_json(const OptimConfig& config);

KernelSpec kernel_spec_from_json(const Json& j);
Json kernel_spec_to_json(const KernelSpec& spec);

Json gda_model_to_json(const GdaModel& model);
GdaModel gda_model_from_json(const Json& j);

Json grnet_params_to_json(const GrNetParams& params);
GrNetParams grnet_params_from_json(const Json& j);

}  // namespace grasslearn
