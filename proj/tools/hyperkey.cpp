// Command-line front end: validation, bound reports, capacity curves, scheme
// verification, bundled example sources, and a lamination walkthrough.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperkey/builtins.hpp"
#include "hyperkey/capacity.hpp"
#include "hyperkey/json_io.hpp"
#include "hyperkey/report.hpp"
#include "hyperkey/submodular.hpp"

namespace {

using namespace hyperkey;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

int env_limit() {
  if (const char* raw = std::getenv("HYPERKEY_MAX_M")) {
    try {
      int v = std::stoi(raw);
      if (v >= 3) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid HYPERKEY_MAX_M\n";
  }
  return kDefaultEnumLimit;
}

std::vector<Rational> parse_grid(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(Rational::parse(item));
  }
  return out;
}

int cmd_validate(const std::string& path) {
  Hypergraph hg = hypergraph_from_json(load_json_file(path));
  Json j;
  j["valid"] = true;
  j["vertices"] = hg.num_vertices();
  j["edges"] = hg.edges().size();
  j["pin"] = hg.is_pin();
  j["h_total"] = rational_to_json(hg.total_entropy());
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_report(const std::string& path, const ReportOptions& options,
               const std::vector<std::string>& scheme_paths) {
  Hypergraph hg = hypergraph_from_json(load_json_file(path));
  std::vector<LinearScheme> schemes;
  for (const std::string& sp : scheme_paths)
    schemes.push_back(load_scheme_file(sp, hg));
  std::cout << report_bundle(hg, options, schemes).dump(2) << "\n";
  return kExitOk;
}

int cmd_bounds(const std::string& path, const ReportOptions& options) {
  Hypergraph hg = hypergraph_from_json(load_json_file(path));
  Json j;
  j["ep"] = bound_report_to_json(ep_bound_tightest(hg, options.partition_limit));
  j["vp"] = bound_report_to_json(vp_bound(hg));
  j["lamination"] = bound_report_to_json(
      lamination_bound_search(hg, options.rho_grid, {}, options.subset_limit));
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_curve(const std::string& path, const std::string& rmax_text,
              const std::string& step_text, const ReportOptions& ropts,
              const std::string& profile_out) {
  Hypergraph hg = hypergraph_from_json(load_json_file(path));
  EnvelopeOptions options;
  options.limit = ropts.subset_limit;
  options.rho_grid = ropts.rho_grid;
  CapacityProfile profile = upper_envelope(hg, options);
  Envelope env = profile.envelope();

  Rational rmax = rmax_text.empty() ? profile.r_co : Rational::parse(rmax_text);
  Rational step = step_text.empty() ? profile.r_co / Rational(8)
                                    : Rational::parse(step_text);
  if (step.sign() <= 0) throw SchemaError("--step must be positive");
  if (rmax.sign() < 0) throw SchemaError("--rmax must be nonnegative");

  std::cout << "R,envelope\n";
  for (Rational r(0); r <= rmax; r += step)
    std::cout << r.str() << "," << env.eval(r).str() << "\n";

  if (!profile_out.empty())
    write_json_file(profile_out, profile_to_json(profile));
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& paths) {
  std::optional<Hypergraph> source;
  std::string scheme_path;
  if (paths.size() == 2) {
    source = hypergraph_from_json(load_json_file(paths[0]));
    scheme_path = paths[1];
  } else {
    scheme_path = paths[0];
  }
  LinearScheme scheme = load_scheme_file(scheme_path, source);
  SchemeVerdict verdict = scheme_rates(scheme);
  std::cout << verdict_to_json(verdict).dump(2) << "\n";
  return verdict.verified() ? kExitOk : kExitVerifyFailed;
}

int cmd_examples(const std::string& name, bool list, const std::string& out_dir,
                 std::size_t tree_cap) {
  const std::vector<std::string> names{"example_3_1", "triangle", "receptacle",
                                       "complete_pin_<m>", "scoop"};
  if (list) {
    for (const std::string& n : names) std::cout << n << "\n";
    return kExitOk;
  }
  Hypergraph hg = [&] {
    try {
      return builtin_source(name);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }();
  std::string base = out_dir.empty() ? name : out_dir + "/" + name;
  write_json_file(base + ".json", hypergraph_to_json(hg));
  std::cout << base << ".json\n";

  std::optional<LinearScheme> scheme;
  if (name == "example_3_1")
    scheme = builtin_example("example_3_1").scheme;
  else if (name == "receptacle")
    scheme = builtin_example("example_4_5").scheme;
  else if (name == "scoop")
    scheme = builtin_example("example_4_8").scheme;
  else {
    TreePacking packing = tree_packing_number(hg, tree_cap);
    if (packing.value.sign() > 0) scheme = tree_protocol(hg, packing);
  }
  if (scheme) {
    write_json_file(base + ".scheme.json", scheme_to_json(*scheme, true));
    std::cout << base << ".scheme.json\n";
  }
  return kExitOk;
}

std::string elem_set_str(ElemSet set, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if ((set >> i) & 1u) {
      if (!first) out += ",";
      out += names[i];
      first = false;
    }
  }
  return out + "}";
}

int cmd_laminate(const std::string& path) {
  NamedMass named = mass_from_json(load_json_file(path));
  const std::vector<std::string>& names = named.ground;

  std::cout << "input mass:\n";
  for (const auto& [set, v] : named.mass.mass)
    std::cout << "  mu" << elem_set_str(set, names) << " = " << v << "\n";

  std::vector<Rational> weights = named.mass.induced_weights();
  std::cout << "induced element weights:\n";
  for (std::size_t i = 0; i < names.size(); ++i)
    std::cout << "  w(" << names[i] << ") = " << weights[i] << "\n";

  MassAssignment chain = greedy_chain(weights);
  std::cout << "greedy chain for these weights:\n";
  for (const auto& [set, v] : chain.mass)
    std::cout << "  mu*" << elem_set_str(set, names) << " = " << v << "\n";

  std::cout << "lamination trace:\n";
  MassAssignment flat = laminate(named.mass, [&](const LaminationStepInfo& step) {
    std::cout << "  transfer " << step.delta << " from "
              << elem_set_str(step.b1, names) << ", "
              << elem_set_str(step.b2, names) << " to "
              << elem_set_str(step.b1 & step.b2, names) << ", "
              << elem_set_str(step.b1 | step.b2, names) << "\n";
  });
  std::cout << "laminated mass:\n";
  for (const auto& [set, v] : flat.mass)
    std::cout << "  mu" << elem_set_str(set, names) << " = " << v << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact key-rate vs discussion-rate analysis for hypergraphical sources"};
  app.require_subcommand(1);

  std::string source_path, scheme_path, rmax_text, step_text, profile_out;
  std::string example_name, rho_grid_text, mass_path, out_dir;
  std::vector<std::string> verify_paths, scheme_paths;
  bool list_examples = false;
  ReportOptions options;
  options.partition_limit = env_limit();
  options.subset_limit = env_limit();

  CLI::App* validate = app.add_subcommand("validate", "check a source file");
  validate->add_option("source", source_path, "source JSON file")->required();

  CLI::App* report = app.add_subcommand("report", "bounds and capacity report");
  report->add_option("source", source_path, "source JSON file")->required();
  report->add_option("--max-partitions", options.partition_limit,
                     "largest vertex count for exhaustive partition search");
  report->add_option("--rho-grid", rho_grid_text,
                     "comma-separated rationals added to the rho grid");
  report->add_option("--tree-cap", options.tree_cap,
                     "abort if a PIN has more spanning trees than this");
  report->add_option("--jobs", options.jobs, "evaluate bounds concurrently");
  report->add_option("--scheme", scheme_paths, "scheme files to verify too");

  CLI::App* bounds = app.add_subcommand("bounds", "just the three upper bounds");
  bounds->add_option("source", source_path, "source JSON file")->required();
  bounds->add_option("--max-partitions", options.partition_limit,
                     "largest vertex count for exhaustive partition search");
  bounds->add_option("--rho-grid", rho_grid_text,
                     "comma-separated rationals added to the rho grid");

  CLI::App* curve = app.add_subcommand("curve", "upper envelope as CSV");
  curve->add_option("source", source_path, "source JSON file")->required();
  curve->add_option("--rmax", rmax_text, "largest discussion rate (default R_CO)");
  curve->add_option("--step", step_text, "grid step (default R_CO/8)");
  curve->add_option("--rho-grid", rho_grid_text,
                    "comma-separated rationals added to the rho grid");
  curve->add_option("--profile-out", profile_out,
                    "also write the capacity profile JSON here");

  CLI::App* verify = app.add_subcommand("verify", "check a discussion scheme");
  verify
      ->add_option("files", verify_paths,
                   "either <source.json> <scheme.json>, or one scheme file "
                   "with an inline source")
      ->expected(1, 2);

  CLI::App* examples = app.add_subcommand("examples", "write bundled sources");
  examples->add_option("name", example_name, "which example to write");
  examples->add_flag("--list", list_examples, "list available names");
  examples->add_option("--out-dir", out_dir, "target directory");
  examples->add_option("--tree-cap", options.tree_cap, "spanning tree cap");

  CLI::App* laminate_cmd =
      app.add_subcommand("laminate", "greedy chain and lamination walkthrough");
  laminate_cmd->add_option("mass", mass_path, "mass JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (!rho_grid_text.empty()) options.rho_grid = parse_grid(rho_grid_text);
    if (validate->parsed()) return cmd_validate(source_path);
    if (report->parsed()) return cmd_report(source_path, options, scheme_paths);
    if (bounds->parsed()) return cmd_bounds(source_path, options);
    if (curve->parsed())
      return cmd_curve(source_path, rmax_text, step_text, options, profile_out);
    if (verify->parsed()) {
      if (verify_paths.empty()) throw SchemaError("verify needs a scheme file");
      return cmd_verify(verify_paths);
    }
    if (examples->parsed()) {
      if (!list_examples && example_name.empty())
        throw SchemaError("examples needs a name or --list");
      return cmd_examples(example_name, list_examples, out_dir, options.tree_cap);
    }
    if (laminate_cmd->parsed()) return cmd_laminate(mass_path);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
