#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sfrac/stochastic.hpp"

namespace sfrac {

struct RealizationRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string label;
  // Crack position (1D) or line intersection coordinate at the final step (2D).
  double position = std::numeric_limits<double>::quiet_NaN();
  // Line intersection coordinate after every loading step (2D only).
  std::vector<double> position_trace;
  std::vector<double> draws;  // y_k for radius perturbations
  std::vector<double> energy_elastic;
  std::vector<double> energy_fracture;
  std::vector<double> energy_total;
  std::vector<double> load;
  std::string field_path;  // relative to the run directory
  std::string error;
};

struct EnsembleResult {
  std::string scenario;
  std::uint64_t master_seed = 0;
  std::vector<RealizationRecord> records;
  double wall_seconds = 0.0;

  std::size_t size() const { return records.size(); }
  std::size_t failures() const;
  std::vector<std::string> labels() const;
};

// Runs one realization; the record's index, seed and (on exception) label/error
// are filled in by the driver.
using RealizationFn = std::function<RealizationRecord(std::size_t index, Rng& rng)>;

struct EnsembleOptions {
  std::size_t workers = 1;
  double max_failure_fraction = 0.05;
  // Called from worker threads after each realization, serialized by the driver.
  std::function<void(const RealizationRecord&)> on_done;
};

// Realization i always draws from rng_for_realization(master_seed, i); results do
// not depend on the worker count. Throws EnsembleError when more than
// max_failure_fraction of the realizations fail.
EnsembleResult run_ensemble(const std::string& scenario, std::size_t samples, std::uint64_t master_seed,
                            const RealizationFn& realization, const EnsembleOptions& options = {});

// Nodal mean and biased (1/M) variance.
std::vector<double> mean_field(std::span<const std::vector<double>> fields);
std::vector<double> variance_field(std::span<const std::vector<double>> fields);

double confidence_halfwidth(double p, std::size_t samples);

struct CrackStatistics {
  std::vector<std::string> labels;  // label set, then "other" and "failed"
  std::vector<double> probability;
  std::vector<double> delta95;
  std::vector<std::size_t> counts;
  std::size_t samples = 0;

  double p(const std::string& label) const;
  double delta(const std::string& label) const;
};

// Relative frequencies; labels outside `label_set` count as "other".
CrackStatistics estimate_probabilities(std::span<const std::string> labels,
                                       std::span<const std::string> label_set);

}  // namespace sfrac
