#include "wim/json_io.hpp"

#include <cctype>
#include <fstream>

#include "wim/errors.hpp"

namespace wim {

namespace {

Rat rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  throw ParseError("expected a number or rational string, got " + j.dump());
}

std::vector<int> sizes_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("\"sizes\" must be a non-empty array");
  std::vector<int> sizes;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ParseError("\"sizes\" entries must be integers");
    sizes.push_back(e.get<int>());
  }
  return sizes;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

FiniteMetric metric_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("metric spec must be an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "discrete") {
    if (!j.contains("n")) throw ParseError("discrete metric needs \"n\"");
    return discrete_metric(j.at("n").get<int>());
  }
  if (kind == "l0") {
    if (!j.contains("sizes")) throw ParseError("l0 metric needs \"sizes\"");
    return l0_metric(sizes_from_json(j.at("sizes")));
  }
  if (kind == "l1") {
    if (!j.contains("sizes")) throw ParseError("l1 metric needs \"sizes\"");
    return l1_metric(sizes_from_json(j.at("sizes")));
  }
  if (kind == "custom") {
    if (!j.contains("matrix")) throw ParseError("custom metric needs \"matrix\"");
    const Json& m = j.at("matrix");
    if (!m.is_array()) throw ParseError("\"matrix\" must be an array of arrays");
    std::vector<RatVec> rows;
    for (const auto& r : m) {
      if (!r.is_array()) throw ParseError("\"matrix\" must be an array of arrays");
      RatVec row;
      for (const auto& e : r) row.push_back(rational_from_json(e));
      rows.push_back(std::move(row));
    }
    return custom_metric(std::move(rows));
  }
  throw ParseError("unknown metric kind \"" + kind + "\"");
}

FiniteMetric load_metric(const std::string& path) { return metric_from_json(load_json_file(path)); }

ModelSpec model_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("factors"))
    throw ParseError("model spec must be an object with a \"factors\" array");
  const Json& fs = j.at("factors");
  if (!fs.is_array() || fs.empty()) throw ParseError("\"factors\" must be a non-empty array");
  std::vector<FactorSpec> factors;
  for (const auto& f : fs) {
    if (!f.is_object() || !f.contains("m")) throw ParseError("each factor needs an \"m\" field");
    FactorSpec spec;
    spec.m = f.at("m").get<int>();
    spec.d = f.contains("d") ? f.at("d").get<int>() : 1;
    factors.push_back(spec);
  }
  return ModelSpec::make(std::move(factors));
}

ModelSpec load_model(const std::string& path) { return model_from_json(load_json_file(path)); }

Distribution distribution_from_json(const Json& j, int expected_n) {
  if (!j.is_array()) throw ParseError("distribution must be a JSON array");
  RatVec values;
  for (const auto& e : j) values.push_back(rational_from_json(e));
  if (expected_n >= 0 && static_cast<int>(values.size()) != expected_n)
    throw InvalidSizeError("distribution has " + std::to_string(values.size()) +
                           " entries, expected " + std::to_string(expected_n));
  return Distribution::from_rationals(std::move(values));
}

Distribution parse_distribution_arg(const std::string& arg, int expected_n) {
  std::size_t pos = 0;
  while (pos < arg.size() && std::isspace(static_cast<unsigned char>(arg[pos]))) ++pos;
  if (pos < arg.size() && arg[pos] == '[') {
    Json j;
    try {
      j = Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("inline distribution: ") + e.what());
    }
    return distribution_from_json(j, expected_n);
  }
  return distribution_from_json(load_json_file(arg), expected_n);
}

Json metric_to_json(const FiniteMetric& metric) {
  Json j;
  j["kind"] = metric_kind_name(metric.kind);
  j["n"] = metric.n;
  Json m = Json::array();
  for (const auto& row : metric.d) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(rat_string(x));
    m.push_back(std::move(r));
  }
  j["matrix"] = std::move(m);
  return j;
}

Json distribution_to_json(const Distribution& mu) {
  Json j = Json::array();
  for (const auto& x : mu.values) j.push_back(rat_string(x));
  return j;
}

Json certificate_to_json(const LipschitzPolytope& poly, const DistanceCertificate& cert) {
  Json j;
  j["value"] = rat_string(cert.value);
  j["value_float"] = to_double(cert.value);
  if (cert.optimizer >= 0) {
    Json v = Json::array();
    for (const auto& x : poly.vertices[static_cast<std::size_t>(cert.optimizer)].coords)
      v.push_back(rat_string(x));
    j["optimizer"] = std::move(v);
  }
  j["active"] = cert.active;
  return j;
}

Json closed_form_to_json(const ClosedFormResult& res) {
  Json j;
  j["value"] = res.value;
  j["case_id"] = res.case_id;
  j["boundary"] = res.boundary;
  Json sols = Json::array();
  for (const auto& s : res.solutions) sols.push_back(s);
  j["solutions"] = std::move(sols);
  if (res.solutions.size() > 1)
    j["ties"] = Json(std::vector<std::vector<double>>(res.solutions.begin() + 1,
                                                      res.solutions.end()));
  return j;
}

Json projection_to_json(const ProjectionResult& res) {
  Json j;
  j["value"] = res.value;
  j["nu_star"] = res.nu_star;
  j["theta_star"] = res.theta_star;
  j["type_dim"] = res.type_dim;
  j["type_face_id"] = res.type_face_id;
  j["ties"] = res.ties;
  if (res.feasible_facet_count >= 0) j["feasible_facets"] = res.feasible_facet_count;
  j["degree_bound"] = res.degree_bound.str();
  return j;
}

}  // namespace wim
