#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfrac/analysis.hpp"
#include "sfrac/config.hpp"
#include "sfrac/montecarlo.hpp"
#include "sfrac/scenarios.hpp"

namespace sfrac {

// Everything `stats` derives from an ensemble.
struct StatsBundle {
  CrackStatistics stats;
  std::vector<double> mean;      // empty when no fields were stored
  std::vector<double> variance;
  Density1D all;                 // density of the recorded positions
  std::vector<std::string> density_labels;  // scenario label set, without other/failed
  std::vector<Density1D> per_label;  // one per density label, zero where a label never occurs
  std::vector<std::size_t> histogram;
};

StatsBundle aggregate(const ScenarioRunner& runner, std::span<const RealizationRecord> records,
                      std::span<const std::vector<double>> nominal_fields);

// probabilities.json, densities.csv, histogram.csv (1D) and the mean/variance field.
void write_stats(const std::filesystem::path& dir, const ScenarioRunner& runner, const StatsBundle& bundle);

struct RunOutcome {
  EnsembleResult ensemble;
  StatsBundle stats;
};

// Runs the ensemble, writes manifest.json, per-realization fields and energy
// curves, and the statistics into `dir`.
RunOutcome execute_run(const RunConfig& config, const std::filesystem::path& dir, std::ostream* log = nullptr);

struct Manifest {
  RunConfig config;
  std::vector<RealizationRecord> records;
};

Manifest read_manifest(const std::filesystem::path& manifest_path);

// Recomputes the statistics from manifest.json and the stored fields, rewriting
// the statistics artifacts next to the manifest. Missing field files are reported
// together in one ConfigError.
StatsBundle stats_from_manifest(const std::filesystem::path& manifest_path);

struct Posterior {
  double x = 0.0;
  std::vector<std::string> labels;
  std::vector<double> priors;
  std::vector<double> posteriors;
};

// Posterior label probabilities given a crack observed at position x.
Posterior condition_on(const StatsBundle& bundle, double x);
void write_posterior(const std::filesystem::path& path, const Posterior& posterior);

}  // namespace sfrac
