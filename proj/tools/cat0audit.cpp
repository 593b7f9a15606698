#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cat0/ann.hpp"
#include "cat0/boxtimes.hpp"
#include "cat0/euclidean.hpp"
#include "cat0/graph_comparison.hpp"
#include "cat0/json_io.hpp"
#include "cat0/lebedeva.hpp"
#include "cat0/metric_space.hpp"
#include "cat0/sixpoint.hpp"
#include "cat0/tolerances.hpp"
#include "cat0/version.hpp"

namespace {

using cat0::FiniteMetricSpace;
using json = nlohmann::ordered_json;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> parse_numbers(const std::string& csv, size_t count,
                                  const char* what) {
  const std::vector<std::string> parts = split_csv(csv);
  if (parts.size() != count) {
    std::ostringstream msg;
    msg << what << " expects " << count << " comma-separated numbers";
    throw std::runtime_error(msg.str());
  }
  std::vector<double> out;
  for (const auto& p : parts) {
    size_t used = 0;
    const double v = std::stod(p, &used);
    if (used != p.size())
      throw std::runtime_error(std::string(what) + ": bad number '" + p + "'");
    out.push_back(v);
  }
  return out;
}

json base_report(const std::string& command) {
  json rep;
  rep["tool"] = cat0::kToolName;
  rep["version"] = cat0::kVersion;
  rep["command"] = command;
  return rep;
}

void attach_input(json& rep, const std::string& path) {
  rep["input"] = path;
  rep["input_checksum"] = cat0::file_checksum(path);
}

int emit(json rep, const Timer& timer, const std::string& out,
         const std::string& summary, int code) {
  rep["timing_ms"] = timer.ms();
  const std::string text = rep.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    cat0::write_file(out, text);
  std::cerr << summary << "\n";
  return code;
}

json params_json(const cat0::SixPointParams& p) {
  return {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"s", p.s}, {"t", p.t}};
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& path, const std::string& out) {
  Timer timer;
  json rep = base_report("validate");
  attach_input(rep, path);
  try {
    const FiniteMetricSpace space = cat0::load_space(path);
    rep["verdict"] = "Valid";
    rep["size"] = space.size();
    std::ostringstream summary;
    summary << "valid metric space on " << space.size() << " points";
    return emit(std::move(rep), timer, out, summary.str(), 0);
  } catch (const cat0::ValidationError& err) {
    rep["verdict"] = "Invalid";
    json violations = json::array();
    for (const auto& v : err.report().violations)
      violations.push_back({{"kind", v.kind},
                            {"idx", {v.idx[0], v.idx[1], v.idx[2]}},
                            {"slack", v.slack}});
    rep["violations"] = std::move(violations);
    return emit(std::move(rep), timer, out,
                "invalid: " + err.report().summary(), 1);
  }
}

// ------------------------------------------------------------------- check

struct CheckArgs {
  std::string input, family, params, labeling, out;
  int samples = 20;
  int max_m = 3;
  std::uint64_t seed = 0;
  int jobs = 1;
};

std::array<int, 4> quad_indices(const FiniteMetricSpace& space,
                                const std::string& csv) {
  const std::vector<std::string> labels = split_csv(csv);
  if (labels.size() != 4)
    throw std::runtime_error("--labeling expects 4 labels for boxtimes");
  std::array<int, 4> idx{};
  for (int i = 0; i < 4; ++i) idx[i] = space.index_of(labels[i]);
  return idx;
}

std::array<std::string, 6> six_labels(const std::string& csv) {
  if (csv.empty()) {
    std::array<std::string, 6> roles;
    for (int i = 0; i < 6; ++i) roles[i] = cat0::kSixPointRoles[i];
    return roles;
  }
  const std::vector<std::string> labels = split_csv(csv);
  if (labels.size() != 6)
    throw std::runtime_error("--labeling expects 6 labels for sixpoint");
  std::array<std::string, 6> out;
  std::copy(labels.begin(), labels.end(), out.begin());
  return out;
}

int run_check(const CheckArgs& args) {
  Timer timer;
  json rep = base_report("check");
  attach_input(rep, args.input);
  rep["family"] = args.family;

  const FiniteMetricSpace space = cat0::load_space(args.input);
  const double maxd = space.max_distance();
  const double tol_abs = cat0::tol::margin * maxd * maxd;
  bool satisfied = false;
  double margin = 0.0;
  std::ostringstream summary;

  if (args.family == "boxtimes") {
    if (!args.params.empty()) {
      const auto v = parse_numbers(args.params, 2, "--params");
      const cat0::BoxtimesParams p{v[0], v[1]};
      const std::array<int, 4> quad = quad_indices(space, args.labeling);
      margin = cat0::boxtimes_margin(space, quad, p);
      satisfied = margin >= -tol_abs;
      rep["witness"] = {{"labeling", split_csv(args.labeling)},
                        {"params", {{"s", p.s}, {"t", p.t}}},
                        {"margin", margin}};
    } else {
      const cat0::BoxtimesVerdict verdict =
          cat0::check_boxtimes(space, args.jobs);
      satisfied = verdict.satisfied;
      margin = verdict.min_margin;
      rep["witness"] = {
          {"labeling", verdict.witness.labeling},
          {"params",
           {{"s", verdict.witness.params.s}, {"t", verdict.witness.params.t}}},
          {"margin", verdict.witness.margin}};
    }
    if (space.size() <= 5) rep["embeddable"] = satisfied;
  } else if (args.family == "sixpoint") {
    if (!args.params.empty()) {
      const auto v = parse_numbers(args.params, 5, "--params");
      const cat0::SixPointParams p{v[0], v[1], v[2], v[3], v[4]};
      cat0::validate_params(p);
      const std::array<std::string, 6> labeling = six_labels(args.labeling);
      margin = cat0::sixpoint_margin(space, labeling, p);
      satisfied = margin >= -tol_abs;
      rep["witness"] = {{"labeling", labeling},
                        {"params", params_json(p)},
                        {"margin", margin}};
    } else {
      const cat0::SixPointWitness witness =
          cat0::sixpoint_search(space, args.jobs);
      satisfied = witness.satisfied;
      margin = witness.margin;
      rep["witness"] = {{"labeling", witness.labeling},
                        {"params", params_json(witness.params)},
                        {"margin", witness.margin}};
    }
  } else if (args.family == "ann") {
    std::vector<int> identity(space.size());
    for (int i = 0; i < space.size(); ++i) identity[i] = i;
    double worst = std::numeric_limits<double>::infinity();
    std::uint64_t worst_seed = args.seed;
    int worst_m = 1;
    for (int k = 0; k < args.samples; ++k) {
      const int m = 1 + (k % std::max(1, args.max_m));
      const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(k);
      const cat0::AnnCertificate cert = cat0::ann_sample(space.size(), m, seed);
      const double value = cat0::ann_margin(space, cert, identity);
      if (value < worst) {
        worst = value;
        worst_seed = seed;
        worst_m = m;
      }
    }
    margin = worst;
    satisfied = margin >= -tol_abs;
    rep["seed"] = args.seed;
    rep["samples"] = args.samples;
    rep["max_m"] = args.max_m;
    rep["witness"] = {{"seed", worst_seed}, {"m", worst_m}, {"margin", margin}};
  } else {
    throw std::runtime_error("unknown family: " + args.family);
  }

  rep["verdict"] = satisfied ? "Satisfied" : "Violated";
  rep["margin"] = margin;
  summary << args.family << ": " << (satisfied ? "satisfied" : "violated")
          << ", margin " << margin;
  return emit(std::move(rep), timer, args.out, summary.str(),
              satisfied ? 0 : 1);
}

// ---------------------------------------------------------------- lebedeva

int run_lebedeva(const std::string& params_csv, const std::string& eps_str,
                 const std::string& prefix) {
  Timer timer;
  json rep = base_report("lebedeva");
  const auto v = parse_numbers(params_csv, 5, "--params");
  const cat0::SixPointParams p{v[0], v[1], v[2], v[3], v[4]};

  const cat0::LebedevaConfig base = cat0::equality_config(p);
  const double maxeps = cat0::max_metric_epsilon(base.points());

  double eps = 0.0;
  if (eps_str == "auto") {
    eps = base.epsilon();
  } else {
    size_t used = 0;
    eps = std::stod(eps_str, &used);
    if (used != eps_str.size())
      throw std::runtime_error("--epsilon expects a number or 'auto'");
  }

  std::vector<std::string> labels(cat0::LebedevaConfig::role_labels().begin(),
                                  cat0::LebedevaConfig::role_labels().end());
  const FiniteMetricSpace flat =
      FiniteMetricSpace::from_euclidean(base.points(), labels);
  const double dz = flat.dist(flat.index_of("z0"), flat.index_of("z1"));
  const double predicted =
      -p.a * p.b * (1.0 - p.c) * p.c * (2.0 * dz * eps + eps * eps);

  FiniteMetricSpace metric = flat;
  if (eps != 0.0) {
    // revalidates the range 0 < eps <= max_metric_epsilon
    metric = cat0::d_epsilon(cat0::LebedevaConfig::create(base.points(), eps));
  }

  const std::string config_path = prefix + ".config.json";
  const std::string metric_path = prefix + ".metric.json";
  cat0::write_file(config_path,
                   cat0::config_to_json(base.to_euclidean(), eps));
  cat0::write_file(metric_path, cat0::space_to_json(metric));

  rep["verdict"] = "Generated";
  rep["params"] = params_json(p);
  rep["epsilon"] = eps;
  rep["max_metric_epsilon"] = maxeps;
  rep["unperturbed_z_distance"] = dz;
  rep["predicted_margin"] = predicted;
  rep["files"] = {config_path, metric_path};

  std::ostringstream summary;
  summary << "wrote " << config_path << " and " << metric_path
          << "; max_metric_epsilon " << maxeps << ", predicted margin "
          << predicted;
  return emit(std::move(rep), timer, "", summary.str(), 0);
}

// ------------------------------------------------------------------- graph

struct GraphArgs {
  std::string input, graph, map, out;
  int iterations = 5000;
  int jobs = 1;
};

cat0::ComparisonGraph resolve_graph(const std::string& spec) {
  if (spec == "o3") return cat0::graph_octahedron();
  if (spec.rfind("cycle:", 0) == 0) {
    const std::string num = spec.substr(6);
    size_t used = 0;
    const int n = std::stoi(num, &used);
    if (used != num.size())
      throw std::runtime_error("--graph cycle:<n> expects an integer");
    return cat0::graph_cycle(n);
  }
  return cat0::graph_from_json(cat0::read_file(spec));
}

int run_graph(const GraphArgs& args) {
  Timer timer;
  json rep = base_report("graph");
  attach_input(rep, args.input);
  rep["graph"] = args.graph;

  const FiniteMetricSpace space = cat0::load_space(args.input);
  const cat0::ComparisonGraph graph = resolve_graph(args.graph);
  const std::vector<std::string> map =
      args.map.empty() ? std::vector<std::string>{} : split_csv(args.map);
  if (!map.empty()) rep["map"] = map;

  const cat0::FeasibilityResult result =
      cat0::feasibility(space, graph, map, args.iterations, args.jobs);

  rep["verdict"] = cat0::to_string(result.status);
  rep["iterations"] = result.iterations;
  rep["residual"] = result.residual;
  int code = 2;
  std::ostringstream summary;
  summary << args.graph << ": " << cat0::to_string(result.status);
  if (result.status == cat0::FeasibilityStatus::kFeasible) {
    rep["solution"] = json::parse(cat0::gram_to_json(*result.gram));
    code = 0;
  } else if (result.status == cat0::FeasibilityStatus::kCertifiedInfeasible) {
    rep["certificate"] =
        json::parse(cat0::certificate_to_json(graph, *result.certificate));
    rep["certificate_value"] = result.certificate_value;
    summary << " (value " << result.certificate_value << ")";
    code = 1;
  }
  return emit(std::move(rep), timer, args.out, summary.str(), code);
}

// ------------------------------------------------------------------- trace

int run_trace(const std::string& path, const std::string& params_csv,
              const std::string& labeling_csv, const std::string& out) {
  Timer timer;
  json rep = base_report("trace");
  attach_input(rep, path);

  const cat0::ConfigFile file = cat0::config_from_json(cat0::read_file(path));
  const auto v = parse_numbers(params_csv, 5, "--params");
  const cat0::SixPointParams p{v[0], v[1], v[2], v[3], v[4]};
  cat0::validate_params(p);
  const std::array<std::string, 6> labeling = six_labels(labeling_csv);

  const cat0::ProofTrace trace = cat0::proof_trace(file.config, labeling, p);
  const double diam = file.config.diameter();
  const double tol_abs = cat0::tol::margin * diam * diam;

  double min_residual = std::numeric_limits<double>::infinity();
  std::vector<std::string> skipped;
  for (const auto& step : trace.steps) {
    if (step.skipped)
      skipped.push_back(step.id);
    else
      min_residual = std::min(min_residual, step.residual);
  }
  const bool valid = min_residual >= -tol_abs;

  rep.update(json::parse(cat0::trace_to_json(trace)));
  rep["mode"] = skipped.empty() ? "full" : "reduced";
  if (!skipped.empty()) rep["skipped_steps"] = skipped;
  rep["min_residual"] = min_residual;
  rep["verdict"] = valid ? "Valid" : "Violated";

  std::ostringstream summary;
  summary << "trace: " << (valid ? "valid" : "violated") << ", min residual "
          << min_residual << ", margin " << trace.margin;
  if (!skipped.empty())
    summary << " (reduced: " << skipped.size() << " steps skipped)";
  return emit(std::move(rep), timer, out, summary.str(), valid ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"audit finite metric spaces against flat-comparison "
               "obstructions"};
  app.require_subcommand(1);

  std::string v_input, v_out;
  CLI::App* validate = app.add_subcommand(
      "validate", "check that a file holds a finite metric space");
  validate->add_option("input", v_input, "space or configuration file")
      ->required();
  validate->add_option("--out", v_out, "write the JSON report to a file");

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "evaluate or search an inequality family on a space");
  check_cmd->add_option("input", check.input, "space or configuration file")
      ->required();
  check_cmd
      ->add_option("--family", check.family,
                   "one of boxtimes, sixpoint, ann")
      ->required();
  check_cmd->add_option("--params", check.params,
                        "fixed parameters (comma separated) instead of a "
                        "search");
  check_cmd->add_option("--labeling", check.labeling,
                        "labels for the form indices (comma separated)");
  check_cmd->add_option("--samples", check.samples,
                        "number of sampled certificates (ann)");
  check_cmd->add_option("--max-m", check.max_m,
                        "largest inequality count per certificate (ann)");
  check_cmd->add_option("--seed", check.seed, "sampling seed (ann)");
  check_cmd->add_option("--jobs", check.jobs, "parallel sweep fan-out");
  check_cmd->add_option("--out", check.out, "write the JSON report to a file");

  std::string l_params, l_eps = "auto", l_out;
  CLI::App* lebedeva = app.add_subcommand(
      "lebedeva", "generate a perturbed equality configuration");
  lebedeva->add_option("--params", l_params, "a,b,c,s,t with 0<a<s<1")
      ->required();
  lebedeva->add_option("--epsilon", l_eps,
                       "perturbation of d(z0,z1), or 'auto'");
  lebedeva->add_option("--out", l_out, "output file prefix")->required();

  GraphArgs graph;
  CLI::App* graph_cmd = app.add_subcommand(
      "graph", "decide a graph-comparison instance");
  graph_cmd->add_option("input", graph.input, "space or configuration file")
      ->required();
  graph_cmd
      ->add_option("--graph", graph.graph, "cycle:<n>, o3, or a graph file")
      ->required();
  graph_cmd->add_option("--map", graph.map,
                        "vertex to label assignment (comma separated)");
  graph_cmd->add_option("--iterations", graph.iterations,
                        "projection iteration budget");
  graph_cmd->add_option("--jobs", graph.jobs, "parallel sweep fan-out");
  graph_cmd->add_option("--out", graph.out, "write the JSON report to a file");

  std::string t_input, t_params, t_labeling, t_out;
  CLI::App* trace = app.add_subcommand(
      "trace", "residual trace of the six-point argument on a configuration");
  trace->add_option("input", t_input, "configuration (points) file")
      ->required();
  trace->add_option("--params", t_params, "a,b,c,s,t")->required();
  trace->add_option("--labeling", t_labeling,
                    "labels taking the roles x0,x1,y0,y1,z0,z1");
  trace->add_option("--out", t_out, "write the JSON report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*validate) return run_validate(v_input, v_out);
    if (*check_cmd) return run_check(check);
    if (*lebedeva) return run_lebedeva(l_params, l_eps, l_out);
    if (*graph_cmd) return run_graph(graph);
    if (*trace) return run_trace(t_input, t_params, t_labeling, t_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
