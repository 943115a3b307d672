#include "sfrac/manifest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sfrac/errors.hpp"

namespace sfrac {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  os.precision(kDigits);
  return os;
}

std::string realization_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "realization_%06zu", i);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& v) { return v.is_number() ? v.get<double>() : std::numeric_limits<double>::quiet_NaN(); }

json config_echo(const RunConfig& config) {
  json j = json::parse(serialize_config(config));
  // Execution details: reruns with another worker count or directory must match byte for byte.
  j.erase("workers");
  j.erase("output_dir");
  return j;
}

json record_json(const RealizationRecord& r) {
  json j;
  j["index"] = r.index;
  j["seed"] = r.seed;
  j["label"] = r.label;
  j["position"] = number_or_null(r.position);
  if (!r.position_trace.empty()) j["position_trace"] = r.position_trace;
  if (!r.draws.empty()) j["draws"] = r.draws;
  if (!r.load.empty())
    j["energy"] = {{"u_bar", r.load},
                   {"elastic", r.energy_elastic},
                   {"fracture", r.energy_fracture},
                   {"total", r.energy_total}};
  if (!r.field_path.empty()) j["field"] = r.field_path;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::vector<double> doubles(const json& j, const char* key) {
  std::vector<double> v;
  if (auto it = j.find(key); it != j.end())
    for (const auto& e : *it) v.push_back(read_number(e));
  return v;
}

RealizationRecord record_from_json(const json& j) {
  RealizationRecord r;
  r.index = j.at("index").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.label = j.at("label").get<std::string>();
  r.position = read_number(j.at("position"));
  r.position_trace = doubles(j, "position_trace");
  r.draws = doubles(j, "draws");
  if (auto it = j.find("energy"); it != j.end()) {
    r.load = doubles(*it, "u_bar");
    r.energy_elastic = doubles(*it, "elastic");
    r.energy_fracture = doubles(*it, "fracture");
    r.energy_total = doubles(*it, "total");
  }
  if (auto it = j.find("field"); it != j.end()) r.field_path = it->get<std::string>();
  if (auto it = j.find("error"); it != j.end()) r.error = it->get<std::string>();
  return r;
}

void write_energy_csv(const fs::path& path, const RealizationRecord& r) {
  auto os = open_out(path);
  os << "u_bar,elastic,fracture,total\n";
  for (std::size_t n = 0; n < r.load.size(); ++n)
    os << r.load[n] << ',' << r.energy_elastic[n] << ',' << r.energy_fracture[n] << ',' << r.energy_total[n] << '\n';
}

void write_profile_csv(const fs::path& path, std::span<const double> x,
                       std::span<const std::pair<std::string, std::span<const double>>> columns) {
  auto os = open_out(path);
  os << "x";
  for (const auto& c : columns) os << ',' << c.first;
  os << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << x[i];
    for (const auto& c : columns) os << ',' << c.second[i];
    os << '\n';
  }
}

std::vector<double> read_alpha_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  if (line != "x,alpha") throw ConfigError("'" + path.string() + "' is not an x,alpha table");
  std::vector<double> alpha;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed row in '" + path.string() + "'");
    alpha.push_back(std::stod(line.substr(comma + 1)));
  }
  return alpha;
}

std::vector<double> read_nominal_field(const ScenarioRunner& runner, const fs::path& path) {
  if (runner.config().scenario != Scenario::antiplane_2d) return read_alpha_csv(path);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  auto data = read_vtk(in);
  const auto* alpha = data.field("alpha");
  if (!alpha) throw ConfigError("'" + path.string() + "' has no alpha field");
  TriMesh mesh;
  mesh.nodes = std::move(data.nodes);
  mesh.triangles = std::move(data.triangles);
  return field_on_nominal(*runner.nominal_mesh(), mesh, *alpha);
}

}  // namespace

StatsBundle aggregate(const ScenarioRunner& runner, std::span<const RealizationRecord> records,
                      std::span<const std::vector<double>> nominal_fields) {
  StatsBundle b;
  const auto label_set = runner.label_set();
  std::vector<std::string> labels;
  for (const auto& r : records) labels.push_back(r.label);
  b.stats = estimate_probabilities(labels, label_set);

  if (!nominal_fields.empty()) {
    b.mean = mean_field(nominal_fields);
    b.variance = variance_field(nominal_fields);
  }

  const auto [lo, hi] = runner.position_range();
  KdeOptions opts;
  opts.lo = lo;
  opts.hi = hi;
  opts.points = runner.config().kde_points;
  std::vector<double> positions;
  for (const auto& r : records)
    if (std::isfinite(r.position)) positions.push_back(r.position);
  if (!positions.empty()) {
    b.all = kde_1d(positions, opts);
    b.density_labels = label_set;
    for (const auto& label : label_set) {
      std::vector<double> sub;
      for (const auto& r : records)
        if (r.label == label && std::isfinite(r.position)) sub.push_back(r.position);
      if (sub.empty()) {
        Density1D zero = b.all;
        std::fill(zero.f.begin(), zero.f.end(), 0.0);
        zero.bandwidth = 0.0;
        b.per_label.push_back(std::move(zero));
      } else {
        b.per_label.push_back(kde_1d(sub, opts));
      }
    }
    const auto sc = runner.config().scenario;
    if (sc == Scenario::bar_sharp || sc == Scenario::bar_phasefield)
      b.histogram = histogram(positions, 120, lo, hi);
  }
  return b;
}

void write_stats(const fs::path& dir, const ScenarioRunner& runner, const StatsBundle& b) {
  json probs;
  probs["samples"] = b.stats.samples;
  json table = json::object();
  for (std::size_t k = 0; k < b.stats.labels.size(); ++k)
    table[b.stats.labels[k]] = {
        {"p", b.stats.probability[k]}, {"delta95", b.stats.delta95[k]}, {"count", b.stats.counts[k]}};
  probs["probabilities"] = table;
  {
    auto os = open_out(dir / "probabilities.json");
    os << probs.dump(2) << '\n';
  }

  const auto label_set = runner.label_set();
  if (!b.all.s.empty()) {
    auto os = open_out(dir / "densities.csv");
    os << "s,f_all";
    for (const auto& l : label_set) os << ",f_" << l;
    os << '\n';
    for (std::size_t k = 0; k < b.all.s.size(); ++k) {
      os << b.all.s[k] << ',' << b.all.f[k];
      for (const auto& d : b.per_label) os << ',' << d.f[k];
      os << '\n';
    }
  }
  if (!b.histogram.empty()) {
    const auto [lo, hi] = runner.position_range();
    const double w = (hi - lo) / static_cast<double>(b.histogram.size());
    auto os = open_out(dir / "histogram.csv");
    os << "x_left,x_right,count\n";
    for (std::size_t k = 0; k < b.histogram.size(); ++k)
      os << lo + w * static_cast<double>(k) << ',' << lo + w * static_cast<double>(k + 1) << ',' << b.histogram[k]
         << '\n';
  }
  if (!b.mean.empty()) {
    if (const auto* mesh = runner.nominal_mesh()) {
      auto os = open_out(dir / "alpha_mean.vtk");
      const NamedField fields[] = {{"alpha_mean", b.mean}, {"alpha_variance", b.variance}};
      write_vtk(os, *mesh, fields);
    } else if (const auto* grid = runner.grid()) {
      const std::pair<std::string, std::span<const double>> cols[] = {{"mean", b.mean}, {"variance", b.variance}};
      write_profile_csv(dir / "alpha_mean.csv", grid->nodes, cols);
    }
  }
}

RunOutcome execute_run(const RunConfig& config, const fs::path& dir, std::ostream* log) {
  const ScenarioRunner runner(config);
  fs::create_directories(dir);
  const bool store = config.write_fields &&
                     (config.scenario == Scenario::antiplane_2d || config.scenario == Scenario::bar_phasefield);
  const bool energy = config.scenario == Scenario::antiplane_2d || config.scenario == Scenario::bar_phasefield;
  if (store) fs::create_directories(dir / "fields");
  if (energy) fs::create_directories(dir / "energy");

  std::vector<std::vector<double>> nominal(config.samples);
  auto realization = [&](std::size_t i, Rng& rng) {
    auto out = runner.run(i, rng);
    const auto name = realization_name(i);
    if (store) {
      if (out.mesh) {
        out.record.field_path = "fields/" + name + ".vtk";
        auto os = open_out(dir / out.record.field_path);
        const NamedField fields[] = {{"alpha", out.field}};
        write_vtk(os, *out.mesh, fields);
      } else {
        out.record.field_path = "fields/" + name + ".csv";
        const std::pair<std::string, std::span<const double>> cols[] = {{"alpha", out.field}};
        write_profile_csv(dir / out.record.field_path, runner.grid()->nodes, cols);
      }
      nominal[i] = std::move(out.nominal_field);
    }
    if (energy) write_energy_csv(dir / "energy" / (name + ".csv"), out.record);
    return out.record;
  };

  EnsembleOptions opts;
  opts.workers = config.workers;
  RunOutcome outcome;
  outcome.ensemble = run_ensemble(to_string(config.scenario), config.samples, config.master_seed, realization, opts);

  json manifest;
  manifest["format"] = "sfrac-ensemble";
  manifest["version"] = 1;
  manifest["scenario"] = to_string(config.scenario);
  manifest["samples"] = config.samples;
  manifest["master_seed"] = config.master_seed;
  manifest["labels"] = runner.label_set();
  manifest["config"] = config_echo(config);
  json records = json::array();
  for (const auto& r : outcome.ensemble.records) records.push_back(record_json(r));
  manifest["realizations"] = std::move(records);
  {
    auto os = open_out(dir / "manifest.json");
    os << manifest.dump(1) << '\n';
  }

  std::vector<std::vector<double>> fields;
  if (store)
    for (std::size_t i = 0; i < nominal.size(); ++i)
      if (outcome.ensemble.records[i].label != "failed") fields.push_back(std::move(nominal[i]));
  outcome.stats = aggregate(runner, outcome.ensemble.records, fields);
  write_stats(dir, runner, outcome.stats);

  if (log) {
    if (config.samples <= 1000) {
      for (const auto& r : outcome.ensemble.records) {
        *log << "realization " << r.index << " label=" << r.label;
        if (std::isfinite(r.position)) *log << " position=" << r.position;
        if (!r.error.empty()) *log << " error=\"" << r.error << '"';
        *log << '\n';
      }
    }
    for (std::size_t k = 0; k < outcome.stats.stats.labels.size(); ++k)
      *log << "p(" << outcome.stats.stats.labels[k] << ") = " << outcome.stats.stats.probability[k] << " +- "
           << outcome.stats.stats.delta95[k] << '\n';
    *log << "samples " << config.samples << ", wall time " << outcome.ensemble.wall_seconds << " s\n";
    log->flush();
  }
  return outcome;
}

Manifest read_manifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("cannot read manifest '" + manifest_path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  Manifest m;
  try {
    m.config = parse_config(j.at("config").dump());
    for (const auto& r : j.at("realizations")) m.records.push_back(record_from_json(r));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
  for (std::size_t i = 0; i < m.records.size(); ++i)
    if (m.records[i].index != i) throw ConfigError("manifest realizations are not indexed 0..M-1");
  return m;
}

StatsBundle stats_from_manifest(const fs::path& manifest_path) {
  const auto m = read_manifest(manifest_path);
  const auto dir = manifest_path.parent_path();
  const ScenarioRunner runner(m.config);

  std::vector<std::string> missing;
  for (const auto& r : m.records)
    if (!r.field_path.empty() && !fs::exists(dir / r.field_path)) missing.push_back((dir / r.field_path).string());
  if (!missing.empty()) {
    std::string msg = "missing field files:";
    for (const auto& p : missing) msg += "\n  " + p;
    throw ConfigError(msg);
  }

  std::vector<std::vector<double>> fields;
  for (const auto& r : m.records)
    if (!r.field_path.empty() && r.label != "failed") fields.push_back(read_nominal_field(runner, dir / r.field_path));
  auto bundle = aggregate(runner, m.records, fields);
  write_stats(dir, runner, bundle);
  return bundle;
}

Posterior condition_on(const StatsBundle& bundle, double x) {
  if (bundle.all.s.empty()) throw UndefinedObservation("ensemble has no recorded positions");
  Posterior post;
  post.x = x;
  for (const auto& l : bundle.density_labels) {
    post.labels.push_back(l);
    post.priors.push_back(bundle.stats.p(l));
  }
  post.posteriors = bayes_condition(post.priors, bundle.per_label, bundle.all, x);
  return post;
}

void write_posterior(const fs::path& path, const Posterior& posterior) {
  json j;
  j["s"] = posterior.x;
  json table = json::object();
  for (std::size_t k = 0; k < posterior.labels.size(); ++k)
    table[posterior.labels[k]] = {{"prior", posterior.priors[k]}, {"posterior", posterior.posteriors[k]}};
  j["posteriors"] = table;
  auto os = open_out(path);
  os << j.dump(2) << '\n';
}

}  // namespace sfrac
