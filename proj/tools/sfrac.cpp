#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "reproduce.hpp"
#include "sfrac/config.hpp"
#include "sfrac/errors.hpp"
#include "sfrac/manifest.hpp"
#include "sfrac/mesh.hpp"
#include "sfrac/scenarios.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;
constexpr int kMismatch = 4;

void report(const std::string& kind, const std::string& message, int code,
            const std::vector<std::string>& details = {}) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  if (!details.empty()) j["details"] = details;
  std::cerr << j.dump() << '\n';
}

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || p != end) throw sfrac::ConfigError(std::string("invalid ") + what + " '" + text + "'");
  return v;
}

// --workers beats SFRAC_WORKERS beats the config file.
std::size_t resolve_workers(std::optional<std::size_t> flag, std::size_t from_config) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SFRAC_WORKERS"); env && *env) return parse_count(env, "SFRAC_WORKERS");
  return from_config;
}

int cmd_run(const std::string& config_path, std::optional<std::string> out, std::optional<std::size_t> workers) {
  auto config = sfrac::load_config(config_path);
  if (out) config.output_dir = *out;
  config.workers = resolve_workers(workers, config.workers);
  config.validate();
  sfrac::execute_run(config, config.output_dir, &std::cout);
  std::cout << "manifest " << (fs::path(config.output_dir) / "manifest.json").string() << '\n';
  return kOk;
}

int cmd_stats(const std::string& manifest, std::optional<std::string> condition) {
  std::optional<double> at;
  if (condition) {
    const auto eq = condition->find('=');
    if (eq == std::string::npos || condition->substr(0, eq) != "s")
      throw sfrac::ConfigError("--condition expects s=<value>");
    const auto value = condition->substr(eq + 1);
    double x = 0.0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || p != value.data() + value.size())
      throw sfrac::ConfigError("--condition value '" + value + "' is not a number");
    at = x;
  }
  const auto bundle = sfrac::stats_from_manifest(manifest);
  const auto& st = bundle.stats;
  for (std::size_t k = 0; k < st.labels.size(); ++k)
    std::cout << "p(" << st.labels[k] << ") = " << st.probability[k] << " +- " << st.delta95[k] << '\n';
  if (at) {
    const auto posterior = sfrac::condition_on(bundle, *at);
    const auto path = fs::path(manifest).parent_path() / "posteriors.json";
    sfrac::write_posterior(path, posterior);
    for (std::size_t k = 0; k < posterior.labels.size(); ++k)
      std::cout << "p(" << posterior.labels[k] << " | s=" << *at << ") = " << posterior.posteriors[k] << '\n';
  }
  return kOk;
}

int cmd_reproduce(const std::string& id, std::optional<std::string> out, std::optional<std::size_t> workers) {
  if (!sfrac::cli::is_experiment(id)) {
    std::string known;
    for (const auto& k : sfrac::cli::experiment_ids()) known += (known.empty() ? "" : ", ") + k;
    throw sfrac::ConfigError("unknown experiment '" + id + "' (known: " + known + ")");
  }
  const fs::path dir = out ? fs::path(*out) : fs::path("reproduce") / id;
  const auto checks = sfrac::cli::reproduce(id, dir, resolve_workers(workers, 0), std::cout);
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << id << ": " << c.name << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  std::cout << (all ? "PASS " : "FAIL ") << id << '\n';
  return all ? kOk : kMismatch;
}

int cmd_mesh_export(const std::string& config_path, const std::string& out, std::optional<std::size_t> realization) {
  const auto config = sfrac::load_config(config_path);
  if (config.scenario != sfrac::Scenario::antiplane_2d) throw sfrac::ConfigError("mesh-export needs antiplane_2d");
  const sfrac::ScenarioRunner runner(config);
  const auto mesh = realization ? runner.realization_mesh(*realization) : *runner.nominal_mesh();
  if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
  std::ofstream os(out);
  if (!os) throw sfrac::ConfigError("cannot write '" + out + "'");
  std::vector<double> markers(mesh.node_count());
  for (std::size_t i = 0; i < markers.size(); ++i) markers[i] = static_cast<double>(mesh.markers[i]);
  const sfrac::NamedField fields[] = {{"marker", markers}};
  sfrac::write_vtk(os, mesh, fields);
  std::cout << mesh.node_count() << " nodes, " << mesh.triangle_count() << " triangles -> " << out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout << std::unitbuf;
  CLI::App app{"Stochastic phase-field fracture ensembles"};
  app.require_subcommand(1);

  std::string config_path, manifest_path, experiment, out_path;
  std::optional<std::string> out, condition;
  std::optional<std::size_t> workers, realization;

  auto* run = app.add_subcommand("run", "run an ensemble described by a config file");
  run->add_option("config", config_path, "config file (JSON)")->required();
  run->add_option("--out", out, "output directory (overrides the config)");
  run->add_option("--workers", workers, "worker threads, 0 = hardware concurrency");

  auto* stats = app.add_subcommand("stats", "recompute statistics from a manifest");
  stats->add_option("manifest", manifest_path, "manifest.json of a finished run")->required();
  stats->add_option("--condition", condition, "Bayes posteriors given a crack at s=<value>");

  auto* repro = app.add_subcommand("reproduce", "run a pinned experiment and compare to expectations");
  repro->add_option("id", experiment, "experiment id")->required();
  repro->add_option("--out", out, "output directory (default reproduce/<id>)");
  repro->add_option("--workers", workers, "worker threads");

  auto* mesh = app.add_subcommand("mesh-export", "write the (deformed) 2D mesh as VTK");
  mesh->add_option("config", config_path, "config file (JSON)")->required();
  mesh->add_option("--out", out_path, "VTK file")->required();
  mesh->add_option("--realization", realization, "export the mesh of this realization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("usage", e.what(), kConfigError);
    return kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, out, workers);
    if (*stats) return cmd_stats(manifest_path, condition);
    if (*repro) return cmd_reproduce(experiment, out, workers);
    if (*mesh) return cmd_mesh_export(config_path, out_path, realization);
  } catch (const sfrac::ConfigError& e) {
    report("config", e.what(), kConfigError);
    return kConfigError;
  } catch (const sfrac::UndefinedObservation& e) {
    report("undefined_observation", e.what(), kConfigError);
    return kConfigError;
  } catch (const sfrac::InvalidArgument& e) {
    report("invalid_argument", e.what(), kConfigError);
    return kConfigError;
  } catch (const sfrac::EnsembleError& e) {
    report("ensemble", e.what(), kSolverError, e.diagnostics());
    return kSolverError;
  } catch (const sfrac::ConvergenceError& e) {
    report("convergence", e.what(), kSolverError);
    return kSolverError;
  } catch (const sfrac::GeometryError& e) {
    report("geometry", e.what(), kSolverError);
    return kSolverError;
  } catch (const sfrac::DeformationError& e) {
    report("deformation", e.what(), kSolverError);
    return kSolverError;
  } catch (const std::filesystem::filesystem_error& e) {
    report("io", e.what(), kConfigError);
    return kConfigError;
  } catch (const std::exception& e) {
    report("internal", e.what(), kSolverError);
    return kSolverError;
  }
  return kOk;
}
