#include "sfrac/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "sfrac/errors.hpp"

namespace sfrac {

std::size_t EnsembleResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.label == "failed";
  return n;
}

std::vector<std::string> EnsembleResult::labels() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.label);
  return out;
}

EnsembleResult run_ensemble(const std::string& scenario, std::size_t samples, std::uint64_t master_seed,
                            const RealizationFn& realization, const EnsembleOptions& options) {
  if (samples == 0) throw InvalidArgument("ensemble needs at least one realization");
  const auto start = std::chrono::steady_clock::now();
  EnsembleResult result;
  result.scenario = scenario;
  result.master_seed = master_seed;
  result.records.resize(samples);

  std::atomic<std::size_t> next{0};
  std::mutex done_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= samples) return;
      Rng rng = rng_for_realization(master_seed, i);
      RealizationRecord rec;
      try {
        rec = realization(i, rng);
      } catch (const std::exception& e) {
        rec = RealizationRecord{};
        rec.label = "failed";
        rec.error = e.what();
      }
      rec.index = i;
      rec.seed = master_seed;
      if (options.on_done) {
        std::lock_guard lock(done_mutex);
        options.on_done(rec);
      }
      result.records[i] = std::move(rec);
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, samples));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::size_t failed = result.failures();
  if (static_cast<double>(failed) > options.max_failure_fraction * static_cast<double>(samples)) {
    std::vector<std::string> diag;
    for (const auto& r : result.records)
      if (r.label == "failed") diag.push_back("realization " + std::to_string(r.index) + ": " + r.error);
    throw EnsembleError(std::to_string(failed) + " of " + std::to_string(samples) + " realizations failed",
                        std::move(diag));
  }
  return result;
}

namespace {

void check_fields(std::span<const std::vector<double>> fields) {
  if (fields.empty()) throw InvalidArgument("no fields to aggregate");
  for (const auto& f : fields)
    if (f.size() != fields.front().size()) throw InvalidArgument("fields must share one mesh");
}

}  // namespace

std::vector<double> mean_field(std::span<const std::vector<double>> fields) {
  check_fields(fields);
  std::vector<double> mean(fields.front().size(), 0.0);
  for (const auto& f : fields)
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += f[i];
  for (double& v : mean) v /= static_cast<double>(fields.size());
  return mean;
}

std::vector<double> variance_field(std::span<const std::vector<double>> fields) {
  const auto mean = mean_field(fields);
  std::vector<double> var(mean.size(), 0.0);
  for (const auto& f : fields)
    for (std::size_t i = 0; i < var.size(); ++i) var[i] += (f[i] - mean[i]) * (f[i] - mean[i]);
  for (double& v : var) v /= static_cast<double>(fields.size());
  return var;
}

double confidence_halfwidth(double p, std::size_t samples) {
  if (samples == 0) throw InvalidArgument("confidence interval needs samples");
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

namespace {

std::size_t find_label(const std::vector<std::string>& labels, const std::string& label) {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return k;
  throw InvalidArgument("unknown label '" + label + "'");
}

}  // namespace

double CrackStatistics::p(const std::string& label) const { return probability[find_label(labels, label)]; }
double CrackStatistics::delta(const std::string& label) const { return delta95[find_label(labels, label)]; }

CrackStatistics estimate_probabilities(std::span<const std::string> labels,
                                       std::span<const std::string> label_set) {
  CrackStatistics st;
  for (const auto& l : label_set)
    if (l != "other" && l != "failed") st.labels.push_back(l);
  st.labels.push_back("other");
  st.labels.push_back("failed");
  st.counts.assign(st.labels.size(), 0);
  const std::size_t other = st.labels.size() - 2;
  for (const auto& l : labels) {
    std::size_t k = other;
    for (std::size_t j = 0; j < st.labels.size(); ++j)
      if (st.labels[j] == l) k = j;
    st.counts[k] += 1;
  }
  st.samples = labels.size();
  for (std::size_t k = 0; k < st.labels.size(); ++k) {
    const double p = st.samples ? static_cast<double>(st.counts[k]) / static_cast<double>(st.samples) : 0.0;
    st.probability.push_back(p);
    st.delta95.push_back(st.samples ? confidence_halfwidth(p, st.samples) : 0.0);
  }
  return st;
}

}  // namespace sfrac
