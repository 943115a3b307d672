#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfrac/config.hpp"
#include "sfrac/montecarlo.hpp"

namespace sfrac {

struct RealizationOutput {
  RealizationRecord record;
  std::vector<double> field;              // final alpha on the realization's own mesh or grid
  std::optional<TriMesh> mesh;            // realization mesh (2D only)
  std::vector<double> nominal_field;      // final alpha on the common mesh, for mean/variance
};

// "near_<c>" with the shortest decimal form of c.
std::string attractor_label(double c);

// Nearest attractor within `window` of x, else "other".
std::string label_for_position(double x, std::span<const double> attractors, double window);

// Transfers a field from a deformed copy of `nominal` back onto the nominal nodes:
// unmoved nodes copy their value, others are located in the deformed mesh and
// interpolated, and points inside the perturbed hole take the nearest node value.
std::vector<double> field_on_nominal(const TriMesh& nominal, const TriMesh& deformed, std::span<const double> field);

// Holds what every realization of one configuration shares (grid, nominal mesh).
class ScenarioRunner {
 public:
  explicit ScenarioRunner(RunConfig config);

  const RunConfig& config() const { return config_; }
  std::vector<std::string> label_set() const;
  const TriMesh* nominal_mesh() const { return nominal_ ? &*nominal_ : nullptr; }
  const IntervalMesh* grid() const { return grid_ ? &*grid_ : nullptr; }
  std::vector<double> schedule() const;

  RealizationOutput run(std::size_t index, Rng& rng) const;

  // Mesh realization `index` is solved on (2D only); the nominal mesh when the
  // radius is unperturbed.
  TriMesh realization_mesh(std::size_t index) const;

  // Range used for position densities: [0, 1] on the 2D probe, the bar length in 1D.
  std::pair<double, double> position_range() const;

 private:
  RunConfig config_;
  std::optional<TriMesh> nominal_;
  std::optional<IntervalMesh> grid_;

  RealizationOutput run_double_well(Rng& rng) const;
  RealizationOutput run_bar_sharp(Rng& rng) const;
  RealizationOutput run_bar_phasefield(Rng& rng) const;
  RealizationOutput run_antiplane(Rng& rng) const;
};

}  // namespace sfrac
