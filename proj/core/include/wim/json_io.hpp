#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "wim/model.hpp"
#include "wim/optimize.hpp"
#include "wim/statespace.hpp"
#include "wim/wdist.hpp"

namespace wim {

using Json = nlohmann::json;

/// {"kind": "discrete"|"l0"|"l1"|"custom", "n": int | "sizes": [int...],
///  "matrix": [[rational string...]...]} (matrix required for custom).
FiniteMetric metric_from_json(const Json& j);
FiniteMetric load_metric(const std::string& path);

/// {"factors": [{"m": int, "d": int}, ...]}
ModelSpec model_from_json(const Json& j);
ModelSpec load_model(const std::string& path);

/// Array of floats or rational strings. expected_n < 0 skips the check.
Distribution distribution_from_json(const Json& j, int expected_n = -1);

/// Accepts either inline JSON (first non-space char '[') or a file path.
Distribution parse_distribution_arg(const std::string& arg, int expected_n = -1);

Json metric_to_json(const FiniteMetric& metric);
Json distribution_to_json(const Distribution& mu);
Json certificate_to_json(const LipschitzPolytope& poly, const DistanceCertificate& cert);
Json closed_form_to_json(const ClosedFormResult& res);
Json projection_to_json(const ProjectionResult& res);

Json load_json_file(const std::string& path);

}  // namespace wim
