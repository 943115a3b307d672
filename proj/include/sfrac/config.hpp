#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sfrac/analysis.hpp"
#include "sfrac/mesh.hpp"
#include "sfrac/solvers.hpp"
#include "sfrac/stochastic.hpp"

namespace sfrac {

enum class Scenario { double_well, bar_sharp, bar_phasefield, antiplane_2d };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct RunConfig {
  Scenario scenario = Scenario::antiplane_2d;
  std::size_t samples = 1;
  std::uint64_t master_seed = 1;
  std::string output_dir = "run";
  std::size_t workers = 1;

  SolverParams solver;        // material constants, tolerances and loading
  double youngs_area = 1e4;   // bar only
  AntiplaneGeometry geometry;
  double bar_length = 6.0;
  MeshSizing sizing;
  std::size_t cells = 1000;   // bar grids
  PerturbationSpec perturbation;
  double blend_width = 0.16;  // radius deformation fades out over this distance
  DissipationProfile profile;

  ClassifierOptions classifier;
  Point2 probe_anchor{0.0, 1.0};
  Point2 probe_direction{1.5, -1.0};
  std::size_t probe_samples = 1001;
  std::vector<double> attractors{1.0, 4.0};
  double window = 0.5;
  std::size_t kde_points = 512;
  bool write_fields = true;

  BarParams bar_params() const;
  void validate() const;
};

// Reference constants plus the per-scenario defaults (grid size, eta, loading).
RunConfig default_config(Scenario scenario);

// Parses the JSON document; unknown keys, wrong types and invalid values raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Full document with every key, so that parse(serialize(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

}  // namespace sfrac
