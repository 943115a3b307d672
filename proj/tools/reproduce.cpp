#include "reproduce.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "sfrac/errors.hpp"
#include "sfrac/manifest.hpp"

namespace sfrac::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

Check within(const std::string& name, double value, double lo, double hi) {
  return {name, value >= lo && value <= hi, fmt(value) + " in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

RunOutcome run(RunConfig c, const fs::path& dir, std::size_t workers, std::ostream& log) {
  c.workers = workers;
  c.output_dir = dir.string();
  log << "== " << to_string(c.scenario) << " -> " << dir.string() << '\n';
  return execute_run(c, dir, &log);
}

RunConfig sharp(ProfileKind kind, double eta) {
  auto c = default_config(Scenario::bar_sharp);
  c.profile.kind = kind;
  c.perturbation.eta = eta;
  return c;
}

std::string eta_dir(double eta) { return "eta_" + fmt(eta); }

std::vector<Check> fig4(const fs::path& dir, std::size_t w, std::ostream& log) {
  const auto r = run(sharp(ProfileKind::double_v, 0.01), dir, w, log);
  return {within("p(near 1)", r.stats.stats.p("near_1"), 1.0 / 3.0 - 0.02, 1.0 / 3.0 + 0.02),
          within("p(near 4)", r.stats.stats.p("near_4"), 2.0 / 3.0 - 0.02, 2.0 / 3.0 + 0.02)};
}

std::vector<Check> fig5(const fs::path& dir, std::size_t w, std::ostream& log) {
  std::vector<Check> checks;
  std::vector<double> p1;
  for (double eta : {0.1, 0.01}) {
    const auto r = run(sharp(ProfileKind::double_u, eta), dir / eta_dir(eta), w, log);
    p1.push_back(r.stats.stats.p("near_1"));
    checks.push_back(within("eta=" + fmt(eta) + " p(near 1)", p1.back(), 1.0 / 3.0 - 0.02, 1.0 / 3.0 + 0.02));
    checks.push_back(within("eta=" + fmt(eta) + " p(near 4)", r.stats.stats.p("near_4"), 2.0 / 3.0 - 0.02,
                            2.0 / 3.0 + 0.02));
  }
  checks.push_back(within("|p(eta=0.1) - p(eta=0.01)|", std::abs(p1[0] - p1[1]), 0.0, 0.03 - 1e-15));
  return checks;
}

std::vector<Check> fig6(const fs::path& dir, std::size_t w, std::ostream& log) {
  std::vector<double> p1;
  for (double eta : {0.1, 0.01, 0.001})
    p1.push_back(run(sharp(ProfileKind::u_v, eta), dir / eta_dir(eta), w, log).stats.stats.p("near_1"));
  const bool monotone = p1[0] <= p1[1] && p1[1] <= p1[2];
  return {{"p(near 1) non-decreasing as eta decreases", monotone,
           fmt(p1[0]) + ", " + fmt(p1[1]) + ", " + fmt(p1[2])},
          within("p(near 1) at eta=0.001", p1[2], 0.9, 1.0)};
}

struct TableRow {
  double eta, ell_over_L;
  std::size_t cells;
  double p1, p2;
};

// Published probabilities; the desk-scale check uses M=500 and a +-0.05 window.
const TableRow kTable[] = {
    {1.0, 0.1, 500, 0.0, 1.0},      {1.0, 0.01, 1000, 0.24, 0.76},   {1.0, 0.001, 2000, 0.33, 0.67},
    {0.5, 0.01, 1000, 0.11, 0.89},  {0.5, 0.001, 2000, 0.32, 0.68},  {0.5, 0.0001, 5000, 0.34, 0.66},
    {0.1, 0.01, 1000, 0.0, 1.0},    {0.1, 0.001, 2000, 0.24, 0.76},  {0.1, 0.0001, 5000, 0.34, 0.66},
};

std::vector<Check> table_row(std::size_t row, const fs::path& dir, std::size_t w, std::ostream& log) {
  const auto& t = kTable[row];
  auto c = default_config(Scenario::bar_phasefield);
  c.perturbation.eta = t.eta;
  c.solver.ell = t.ell_over_L * c.bar_length;
  c.cells = t.cells;
  c.samples = 500;
  c.write_fields = false;
  const auto r = run(c, dir, w, log);
  const double p1 = r.stats.stats.p("near_1"), p2 = r.stats.stats.p("near_4");
  if (t.p1 == 0.0)
    return {{"p1 == 0", p1 == 0.0, fmt(p1)}, {"p2 == 1", p2 == 1.0, fmt(p2)}};
  return {within("p1", p1, t.p1 - 0.05, t.p1 + 0.05), within("p2", p2, t.p2 - 0.05, t.p2 + 0.05)};
}

std::vector<Check> double_well(const fs::path& dir, std::size_t w, std::ostream& log) {
  const auto r = run(default_config(Scenario::double_well), dir, w, log);
  return {within("P(near 0)", r.stats.stats.p("near_0"), 0.48, 0.52)};
}

RunOutcome antiplane(const fs::path& dir, std::size_t w, std::ostream& log) {
  return run(default_config(Scenario::antiplane_2d), dir, w, log);
}

std::vector<Check> probs_2d(const fs::path& dir, std::size_t w, std::ostream& log) {
  const auto r = antiplane(dir, w, log);
  std::vector<Check> checks;
  const auto& st = r.stats.stats;
  const std::size_t classified = st.counts[0] + st.counts[1] + st.counts[2];
  checks.push_back({"every realization classified", classified == st.samples,
                    std::to_string(classified) + " of " + std::to_string(st.samples)});
  for (const char* l : {"type1", "type2", "type3"}) {
    const auto n = st.counts[static_cast<std::size_t>(l[4] - '1')];
    checks.push_back({std::string(l) + " occurs", n > 0, std::to_string(n)});
    checks.push_back(within(std::string("p(") + l + ")", st.p(l), 0.10, 0.60));
  }
  return checks;
}

std::vector<Check> fig11(const fs::path& dir, std::size_t w, std::ostream& log) {
  const auto r = antiplane(dir, w, log);
  const bool written = fs::exists(dir / "alpha_mean.vtk");
  double vmax = 0.0;
  for (double v : r.stats.variance) vmax = std::max(vmax, v);
  return {{"mean and variance fields written", written, (dir / "alpha_mean.vtk").string()},
          {"variance field non-trivial", vmax > 0.0, "max variance " + fmt(vmax)}};
}

std::vector<Check> fig5_qualitative(const fs::path& dir, std::size_t w, std::ostream& log) {
  const auto r = antiplane(dir, w, log);
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& rec : r.ensemble.records)
    if (!rec.energy_total.empty()) {
      auto& a = acc[rec.label];
      a.first += rec.energy_total.back();
      a.second += 1;
    }
  auto mean = [&](const std::string& l) {
    auto it = acc.find(l);
    return it == acc.end() ? std::nan("") : it->second.first / static_cast<double>(it->second.second);
  };
  const double e1 = mean("type1"), e2 = mean("type2"), e3 = mean("type3");
  return {{"mean final energy type1 > type2", e1 > e2, fmt(e1) + " vs " + fmt(e2)},
          {"mean final energy type1 > type3", e1 > e3, fmt(e1) + " vs " + fmt(e3)}};
}

using Recipe = std::function<std::vector<Check>(const fs::path&, std::size_t, std::ostream&)>;

const std::map<std::string, Recipe>& recipes() {
  static const std::map<std::string, Recipe> table = [] {
    std::map<std::string, Recipe> m{
        {"fig4", fig4},
        {"fig5", fig5},
        {"fig6", fig6},
        {"double-well", double_well},
        {"probs-2d-coarse", probs_2d},
        {"fig11-coarse", fig11},
        {"fig5-qualitative", fig5_qualitative},
    };
    for (std::size_t k = 0; k < std::size(kTable); ++k)
      m["table5-row" + std::to_string(k + 1)] = [k](const fs::path& d, std::size_t w, std::ostream& log) {
        return table_row(k, d, w, log);
      };
    return m;
  }();
  return table;
}

}  // namespace

std::vector<std::string> experiment_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : recipes()) ids.push_back(id);
  return ids;
}

bool is_experiment(const std::string& id) { return recipes().count(id) > 0; }

std::vector<Check> reproduce(const std::string& id, const fs::path& dir, std::size_t workers, std::ostream& log) {
  auto it = recipes().find(id);
  if (it == recipes().end()) throw ConfigError("unknown experiment '" + id + "'");
  return it->second(dir, workers, log);
}

}  // namespace sfrac::cli
