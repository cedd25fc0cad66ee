#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "golden_tables.hpp"
#include "wim/errors.hpp"
#include "wim/json_io.hpp"
#include "wim/model.hpp"
#include "wim/optimize.hpp"
#include "wim/polar.hpp"
#include "wim/polytope.hpp"
#include "wim/wdist.hpp"

namespace {

using wim::Json;

constexpr int kExitFileNotFound = 2;
constexpr int kExitParse = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitDomain = 5;

/// Accepts "discrete:N", "l0:AxBx...", "l1:AxBx..." or a JSON file path.
wim::FiniteMetric resolve_metric(const std::string& arg) {
  auto colon = arg.find(':');
  if (colon != std::string::npos) {
    std::string kind = arg.substr(0, colon);
    std::string rest = arg.substr(colon + 1);
    if (kind == "discrete") return wim::discrete_metric(std::stoi(rest));
    if (kind == "l0" || kind == "l1") {
      std::vector<int> sizes;
      std::stringstream ss(rest);
      std::string tok;
      while (std::getline(ss, tok, 'x')) sizes.push_back(std::stoi(tok));
      return kind == "l0" ? wim::l0_metric(sizes) : wim::l1_metric(sizes);
    }
    throw wim::ParseError("unknown builtin metric \"" + arg + "\"");
  }
  return wim::load_metric(arg);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw wim::FileNotFoundError("cannot write " + out_path);
    out << text;
  }
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct CsvWriter {
  std::string body;

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) body += ',';
      body += cells[i];
    }
    body += '\n';
  }
};

// ---------------------------------------------------------------- metric --

int cmd_metric(const std::string& metric_arg, bool check, const std::string& out) {
  wim::FiniteMetric m = resolve_metric(metric_arg);  // construction validates
  Json j = wim::metric_to_json(m);
  if (check) j["valid"] = true;
  emit_json(j, out);
  return 0;
}

// ------------------------------------------------------------- lipschitz --

int cmd_lipschitz(const std::string& metric_arg, bool want_fvector, bool want_vertices,
                  const std::string& out) {
  wim::FiniteMetric m = resolve_metric(metric_arg);
  wim::LipschitzPolytope poly = wim::lipschitz_vertices(m);
  Json j;
  j["n"] = m.n;
  j["vertex_count"] = poly.vertices.size();
  if (want_vertices) {
    Json vs = Json::array();
    for (const auto& v : poly.vertices) {
      Json row = Json::array();
      for (const auto& x : v.coords) row.push_back(wim::rat_string(x));
      vs.push_back(std::move(row));
    }
    j["vertices"] = std::move(vs);
  }
  if (want_fvector) {
    wim::WassersteinBall ball = wim::build_ball(poly);
    wim::FaceLattice lattice = wim::face_lattice(ball);
    // the polytope's f-vector is the reverse of its polar dual's
    Json fv = Json::array();
    for (auto it = lattice.f_vector.rbegin(); it != lattice.f_vector.rend(); ++it)
      fv.push_back(*it);
    j["fvector"] = std::move(fv);
  }
  emit_json(j, out);
  return 0;
}

// ------------------------------------------------------------------ ball --

int cmd_ball(const std::string& metric_arg, const std::string& faces, const std::string& out) {
  wim::FiniteMetric m = resolve_metric(metric_arg);
  wim::LipschitzPolytope poly = wim::lipschitz_vertices(m);
  wim::WassersteinBall ball = wim::build_ball(poly);
  Json j;
  j["n"] = m.n;
  Json vs = Json::array();
  for (const auto& v : ball.vertices) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(wim::rat_string(x));
    vs.push_back(std::move(row));
  }
  j["vertices"] = std::move(vs);
  if (!faces.empty()) {
    wim::FaceLattice lattice = wim::face_lattice(ball);
    j["fvector"] = lattice.f_vector;
    int only_dim = faces == "all" ? -1 : std::stoi(faces);
    Json fl = Json::array();
    for (const auto& f : lattice.faces) {
      if (only_dim >= 0 && f.dim != only_dim) continue;
      Json fj;
      fj["dim"] = f.dim;
      fj["vertex_ids"] = f.vertex_ids;
      if (f.facet_id >= 0) {
        Json normal = Json::array();
        for (const auto& x : ball.facet_normals[static_cast<std::size_t>(f.facet_id)].coords)
          normal.push_back(wim::rat_string(x));
        fj["normal"] = std::move(normal);
      }
      fl.push_back(std::move(fj));
    }
    j["faces"] = std::move(fl);
  }
  emit_json(j, out);
  return 0;
}

// -------------------------------------------------------------- distance --

int cmd_distance(const std::string& metric_arg, const std::string& mu_arg,
                 const std::string& nu_arg, const std::string& out) {
  wim::FiniteMetric m = resolve_metric(metric_arg);
  wim::Distribution mu = wim::parse_distribution_arg(mu_arg, m.n);
  wim::Distribution nu = wim::parse_distribution_arg(nu_arg, m.n);
  wim::LipschitzPolytope poly = wim::lipschitz_vertices(m);
  wim::DistanceCertificate cert = wim::wasserstein(poly, mu, nu);
  emit_json(wim::certificate_to_json(poly, cert), out);
  return 0;
}

// ----------------------------------------------------------- closed-form --

int cmd_closed_form(const std::string& which, const std::string& mu_arg, const std::string& out) {
  wim::ClosedFormResult res;
  if (which == "hw") {
    wim::Distribution mu = wim::parse_distribution_arg(mu_arg, 3);
    res = wim::hardy_weinberg_closed_form(mu.as_doubles());
  } else if (which == "2bit") {
    wim::Distribution mu = wim::parse_distribution_arg(mu_arg, 4);
    res = wim::twobit_closed_form(mu.as_doubles());
  } else {
    throw wim::ParseError("closed-form model must be hw or 2bit");
  }
  emit_json(wim::closed_form_to_json(res), out);
  return 0;
}

// --------------------------------------------------------------- project --

int cmd_project(const std::string& model_path, const std::string& metric_arg,
                const std::string& mu_arg, const std::string& method, std::uint64_t seed,
                const std::string& out) {
  wim::ModelSpec model = wim::load_model(model_path);
  wim::FiniteMetric metric = resolve_metric(metric_arg);
  wim::Workspace ws = wim::Workspace::make(std::move(model), metric);
  wim::Distribution mu = wim::parse_distribution_arg(mu_arg, ws.model.ambient_n);
  wim::ProjectOptions opts;
  opts.seed = seed;

  Json j;
  if (method == "global" || method == "both")
    j["global"] = wim::projection_to_json(wim::project_global(ws, mu.as_doubles(), opts));
  if (method == "facets" || method == "both")
    j["facets"] = wim::projection_to_json(wim::project_by_facets(ws, mu.as_doubles(), opts));
  if (j.size() == 1) j = j.begin().value();
  emit_json(j, out);
  return 0;
}

// ------------------------------------------------------------ experiment --

int cmd_experiment(const std::string& model_path, const std::string& metric_arg, int samples,
                   std::uint64_t seed, int threads, const std::string& out) {
  wim::ModelSpec model = wim::load_model(model_path);
  wim::FiniteMetric metric = resolve_metric(metric_arg);
  wim::Workspace ws = wim::Workspace::make(std::move(model), metric);
  wim::ExperimentReport rep = wim::experiment(ws, samples, seed, threads);

  CsvWriter csv;
  csv.row({"sample_id", "value", "type_dim", "feasible_facets", "tie_count"});
  for (const auto& r : rep.rows)
    csv.row({std::to_string(r.sample_id), format_double(r.value), std::to_string(r.type_dim),
             std::to_string(r.feasible_facets), std::to_string(r.tie_count)});
  emit(csv.body, out);

  Json summary;
  summary["samples"] = samples;
  summary["dim_percent"] = rep.dim_percent;
  summary["mean_feasible"] = rep.mean_feasible;
  if (!out.empty()) std::cout << summary.dump(2) << '\n';
  return 0;
}

// --------------------------------------------------------- polar-degrees --

int cmd_polar(const std::string& model_path, bool shifted, const std::string& out) {
  wim::ModelSpec model = wim::load_model(model_path);
  wim::PolarDegrees pd = wim::polar_degrees(model.shape);
  const auto& values = shifted ? pd.shifted() : pd.delta;
  Json j = Json::array();
  for (const auto& v : values) j.push_back(v.str());
  emit_json(j, out);
  return 0;
}

// ---------------------------------------------------------------- tables --

bool tables_polar(CsvWriter& csv) {
  bool all_ok = true;
  for (const auto& row : wim::golden::polar_rows()) {
    std::vector<wim::FactorSpec> factors;
    for (std::size_t i = 0; i < row.factors_m.size(); ++i)
      factors.push_back({row.factors_m[i], row.factors_d[i]});
    wim::ProductShape shape = wim::ProductShape::make(factors);
    wim::PolarDegrees pd = wim::polar_degrees(shape);
    // published rows start at index codim - 1 (codim of the projective model)
    int dim = 0;
    for (const auto& f : factors) dim += f.m - 1;
    std::size_t off = static_cast<std::size_t>(shape.n - 2 - dim);
    bool ok = off + row.nonzero.size() <= pd.delta.size();
    for (std::size_t i = 0; ok && i < pd.delta.size(); ++i) {
      if (i < off || i >= off + row.nonzero.size())
        ok = pd.delta[i] == 0;
      else
        ok = pd.delta[i] == row.nonzero[i - off];
    }
    std::string got;
    for (const auto& d : pd.delta) got += d.str() + " ";
    std::string want;
    for (auto v : row.nonzero) want += std::to_string(v) + " ";
    csv.row({"polar", row.name, want, got, ok ? "pass" : "FAIL"});
    all_ok = all_ok && ok;
  }
  return all_ok;
}

bool tables_fvector(CsvWriter& csv, std::size_t max_faces) {
  bool all_ok = true;
  for (const auto& row : wim::golden::fvector_rows()) {
    wim::FiniteMetric metric = row.metric == "discrete" ? wim::discrete_metric(row.sizes[0])
                               : row.metric == "l0"     ? wim::l0_metric(row.sizes)
                                                        : wim::l1_metric(row.sizes);
    wim::FaceLattice lattice = wim::face_lattice(wim::build_ball(wim::lipschitz_vertices(metric)),
                                                 max_faces);
    bool ok = lattice.f_vector.size() == row.f.size();
    for (std::size_t i = 0; ok && i < row.f.size(); ++i) ok = lattice.f_vector[i] == row.f[i];
    std::string got;
    for (auto v : lattice.f_vector) got += std::to_string(v) + " ";
    std::string want;
    for (auto v : row.f) want += std::to_string(v) + " ";
    csv.row({"fvector", row.name, want, got, ok ? "pass" : "FAIL"});
    all_ok = all_ok && ok;
  }
  return all_ok;
}

bool tables_experiment(CsvWriter& csv, int samples, std::uint64_t seed, int threads) {
  bool all_ok = true;
  for (const auto& row : wim::golden::experiment_rows()) {
    std::vector<wim::FactorSpec> factors;
    for (std::size_t i = 0; i < row.factors_m.size(); ++i)
      factors.push_back({row.factors_m[i], row.factors_d[i]});
    wim::FiniteMetric metric = row.metric == "discrete" ? wim::discrete_metric(row.sizes[0])
                               : row.metric == "l0"     ? wim::l0_metric(row.sizes)
                                                        : wim::l1_metric(row.sizes);
    wim::Workspace ws = wim::Workspace::make(wim::ModelSpec::make(factors), metric);
    wim::ExperimentReport rep = wim::experiment(ws, samples, seed, threads);
    bool ok = std::abs(rep.mean_feasible - row.mean_feasible) <=
              row.feasible_rel_tol * row.mean_feasible;
    for (std::size_t i = 0; i < row.dims_pct.size() && i < rep.dim_percent.size(); ++i)
      if (std::abs(rep.dim_percent[i] - row.dims_pct[i]) > row.dims_abs_tol) ok = false;
    std::string got = format_double(rep.mean_feasible) + " |";
    for (double p : rep.dim_percent) got += " " + format_double(p);
    std::string want = format_double(row.mean_feasible) + " |";
    for (double p : row.dims_pct) want += " " + format_double(p);
    csv.row({"experiment", row.name, want, got, ok ? "pass" : "FAIL"});
    all_ok = all_ok && ok;
  }
  return all_ok;
}

int cmd_tables(const std::string& which, std::size_t max_faces, int samples, std::uint64_t seed,
               int threads, const std::string& out) {
  CsvWriter csv;
  csv.row({"table", "row", "expected", "computed", "status"});
  bool ok = true;
  if (which == "polar" || which == "all") ok = tables_polar(csv) && ok;
  if (which == "fvector" || which == "all") ok = tables_fvector(csv, max_faces) && ok;
  if (which == "experiment" || which == "all")
    ok = tables_experiment(csv, samples, seed, threads) && ok;
  emit(csv.body, out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein distances to discrete independence models"};
  app.require_subcommand(1);

  std::string metric_arg, model_path, mu_arg, nu_arg, out_path;
  std::string method = "global", cf_model, faces, which = "all";
  bool want_fvector = false, want_vertices = false, check = false, shifted = false;
  std::uint64_t seed = 0;
  int samples = 1000, threads = 0;
  std::size_t max_faces = 1000000;

  auto* c_metric = app.add_subcommand("metric", "Validate and normalize a metric spec");
  c_metric->add_option("--metric,--spec", metric_arg, "metric file or builtin (e.g. l1:3x3)")
      ->required();
  c_metric->add_flag("--check", check, "mark the output as validated");
  c_metric->add_option("--out", out_path, "output path (default stdout)");

  auto* c_lip = app.add_subcommand("lipschitz", "Enumerate Lipschitz polytope vertices");
  c_lip->add_option("--metric", metric_arg)->required();
  c_lip->add_flag("--fvector", want_fvector);
  c_lip->add_flag("--vertices", want_vertices);
  c_lip->add_option("--out", out_path);

  auto* c_ball = app.add_subcommand("ball", "Wasserstein ball vertices and faces");
  c_ball->add_option("--metric", metric_arg)->required();
  c_ball->add_option("--faces", faces, "face dimension to list, or 'all'");
  c_ball->add_option("--out", out_path);

  auto* c_dist = app.add_subcommand("distance", "Exact Wasserstein distance");
  c_dist->add_option("--metric", metric_arg)->required();
  c_dist->add_option("--mu", mu_arg, "inline JSON array or file")->required();
  c_dist->add_option("--nu", nu_arg, "inline JSON array or file")->required();
  c_dist->add_option("--out", out_path);

  auto* c_cf = app.add_subcommand("closed-form", "Closed-form projection (hw, 2bit)");
  c_cf->add_option("--model", cf_model, "hw or 2bit")->required();
  c_cf->add_option("--mu", mu_arg)->required();
  c_cf->add_option("--out", out_path);

  auto* c_proj = app.add_subcommand("project", "Minimize distance to a model");
  c_proj->add_option("--model", model_path, "model spec file")->required();
  c_proj->add_option("--metric", metric_arg)->required();
  c_proj->add_option("--mu", mu_arg)->required();
  c_proj->add_option("--method", method)->check(CLI::IsMember({"global", "facets", "both"}));
  c_proj->add_option("--seed", seed);
  c_proj->add_option("--out", out_path);

  auto* c_exp = app.add_subcommand("experiment", "Batch projection statistics");
  c_exp->add_option("--model", model_path)->required();
  c_exp->add_option("--metric", metric_arg)->required();
  c_exp->add_option("--samples", samples);
  c_exp->add_option("--seed", seed);
  c_exp->add_option("--threads", threads);
  c_exp->add_option("--out", out_path, "CSV output path");

  auto* c_polar = app.add_subcommand("polar-degrees", "Polar degrees of a model");
  c_polar->add_option("--model", model_path)->required();
  c_polar->add_flag("--shifted", shifted, "drop leading zeros");
  c_polar->add_option("--out", out_path);

  auto* c_tables = app.add_subcommand("tables", "Self-check against published values");
  c_tables->add_option("--which", which)
      ->check(CLI::IsMember({"polar", "fvector", "experiment", "all"}));
  c_tables->add_option("--max-faces", max_faces);
  c_tables->add_option("--samples", samples);
  c_tables->add_option("--seed", seed);
  c_tables->add_option("--threads", threads);
  c_tables->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_metric->parsed()) return cmd_metric(metric_arg, check, out_path);
    if (c_lip->parsed()) return cmd_lipschitz(metric_arg, want_fvector, want_vertices, out_path);
    if (c_ball->parsed()) return cmd_ball(metric_arg, faces, out_path);
    if (c_dist->parsed()) return cmd_distance(metric_arg, mu_arg, nu_arg, out_path);
    if (c_cf->parsed()) return cmd_closed_form(cf_model, mu_arg, out_path);
    if (c_proj->parsed())
      return cmd_project(model_path, metric_arg, mu_arg, method, seed, out_path);
    if (c_exp->parsed())
      return cmd_experiment(model_path, metric_arg, samples, seed, threads, out_path);
    if (c_polar->parsed()) return cmd_polar(model_path, shifted, out_path);
    if (c_tables->parsed())
      return cmd_tables(which, max_faces, samples, seed, threads, out_path);
  } catch (const std::exception& e) {
    Json err;
    err["error"]["message"] = e.what();
    int code = 1;
    if (dynamic_cast<const wim::FileNotFoundError*>(&e)) {
      err["error"]["type"] = "file-not-found";
      code = kExitFileNotFound;
    } else if (dynamic_cast<const wim::ParseError*>(&e)) {
      err["error"]["type"] = "parse";
      code = kExitParse;
    } else if (dynamic_cast<const wim::CapacityError*>(&e)) {
      err["error"]["type"] = "capacity";
      code = kExitCapacity;
    } else if (dynamic_cast<const wim::Error*>(&e)) {
      err["error"]["type"] = "domain";
      code = kExitDomain;
    } else {
      err["error"]["type"] = "internal";
    }
    std::cerr << err.dump(2) << '\n';
    return code;
  }
  return 0;
}
