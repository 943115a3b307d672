#include "sfrac/scenarios.hpp"

#include <charconv>
#include <cmath>

#include "sfrac/errors.hpp"

namespace sfrac {

std::string attractor_label(double c) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, c);
  return "near_" + std::string(buf, res.ptr);
}

std::string label_for_position(double x, std::span<const double> attractors, double window) {
  std::string label = "other";
  double closest = window;
  for (double c : attractors) {
    const double d = std::abs(x - c);
    if (d < closest) {
      closest = d;
      label = attractor_label(c);
    }
  }
  return label;
}

std::vector<double> field_on_nominal(const TriMesh& nominal, const TriMesh& deformed, std::span<const double> field) {
  if (field.size() != deformed.node_count()) throw InvalidArgument("field does not match the deformed mesh");
  std::vector<double> out(nominal.node_count());
  std::optional<PointLocator> locator;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point2 p = nominal.nodes[i];
    if (i < deformed.node_count() && deformed.nodes[i] == p) {
      out[i] = field[i];
      continue;
    }
    if (!locator) locator.emplace(deformed);
    if (auto loc = locator->locate(p)) {
      out[i] = interpolate(deformed, *loc, field);
    } else {
      out[i] = field[static_cast<std::size_t>(locator->nearest_node(p))];
    }
  }
  return out;
}

ScenarioRunner::ScenarioRunner(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  switch (config_.scenario) {
    case Scenario::bar_sharp:
    case Scenario::bar_phasefield:
      grid_ = build_interval_mesh(config_.bar_length, config_.cells);
      break;
    case Scenario::antiplane_2d:
      nominal_ = build_antiplane_mesh(config_.geometry, config_.sizing);
      break;
    case Scenario::double_well:
      break;
  }
}

std::vector<std::string> ScenarioRunner::label_set() const {
  if (config_.scenario == Scenario::antiplane_2d) return {"type1", "type2", "type3"};
  std::vector<std::string> labels;
  for (double c : config_.attractors) labels.push_back(attractor_label(c));
  return labels;
}

std::vector<double> ScenarioRunner::schedule() const {
  return loading_schedule(config_.solver.load_increment, config_.solver.n_steps);
}

std::pair<double, double> ScenarioRunner::position_range() const {
  switch (config_.scenario) {
    case Scenario::antiplane_2d: return {0.0, 1.0};
    case Scenario::bar_sharp:
    case Scenario::bar_phasefield: return {0.0, config_.bar_length};
    case Scenario::double_well: return {-0.5, 1.5};
  }
  return {0.0, 1.0};
}

RealizationOutput ScenarioRunner::run(std::size_t, Rng& rng) const {
  switch (config_.scenario) {
    case Scenario::double_well: return run_double_well(rng);
    case Scenario::bar_sharp: return run_bar_sharp(rng);
    case Scenario::bar_phasefield: return run_bar_phasefield(rng);
    case Scenario::antiplane_2d: return run_antiplane(rng);
  }
  throw InvalidArgument("unknown scenario");
}

namespace {

double effective_eta(const PerturbationSpec& spec) {
  return spec.kind == PerturbationKind::none ? 0.0 : spec.eta;
}

void push_energy(RealizationRecord& rec, double load, const EnergyBreakdown& e) {
  rec.load.push_back(load);
  rec.energy_elastic.push_back(e.elastic);
  rec.energy_fracture.push_back(e.fracture);
  rec.energy_total.push_back(e.total);
}

}  // namespace

RealizationOutput ScenarioRunner::run_double_well(Rng& rng) const {
  RealizationOutput out;
  const double q = rng.uniform01() - 0.5;
  const double x = double_well_minimize(effective_eta(config_.perturbation), q);
  out.record.position = x;
  out.record.label = label_for_position(x, config_.attractors, config_.window);
  return out;
}

RealizationOutput ScenarioRunner::run_bar_sharp(Rng& rng) const {
  RealizationOutput out;
  const auto g = white_noise_perturb(config_.profile, *grid_, effective_eta(config_.perturbation), rng);
  const auto crack = sharp_crack_location(g, grid_->nodes);
  out.record.position = crack.position;
  out.record.label = label_for_position(crack.position, config_.attractors, config_.window);
  return out;
}

RealizationOutput ScenarioRunner::run_bar_phasefield(Rng& rng) const {
  RealizationOutput out;
  const auto g = white_noise_perturb(config_.profile, *grid_, effective_eta(config_.perturbation), rng);
  const auto load = schedule();
  const auto sol = solve_bar_phasefield(*grid_, g, config_.bar_params(), load);
  for (std::size_t n = 0; n < load.size(); ++n) push_energy(out.record, load[n], sol.energy[n]);
  out.record.position = argmax_position(sol.alpha, grid_->nodes);
  const auto label = classify_crack_1d(sol.alpha, grid_->nodes, config_.attractors, config_.window,
                                       config_.classifier.threshold);
  out.record.label = label ? attractor_label(config_.attractors[*label]) : "other";
  out.field = sol.alpha;
  out.nominal_field = sol.alpha;
  return out;
}

TriMesh ScenarioRunner::realization_mesh(std::size_t index) const {
  if (!nominal_) throw ConfigError("mesh export needs the antiplane_2d scenario");
  const auto& pert = config_.perturbation;
  if (pert.kind != PerturbationKind::fourier_radius || pert.eta <= 0.0) return *nominal_;
  Rng rng = rng_for_realization(config_.master_seed, index);
  const auto radius = sample_radius(pert, config_.geometry.radius, rng);
  return deform_hole_boundary(*nominal_, [radius](double phi) { return radius(phi); }, config_.blend_width);
}

RealizationOutput ScenarioRunner::run_antiplane(Rng& rng) const {
  RealizationOutput out;
  const auto& geom = config_.geometry;
  std::function<double(double)> radius_fn;
  TriMesh mesh;
  if (config_.perturbation.kind == PerturbationKind::fourier_radius) {
    auto radius = sample_radius(config_.perturbation, geom.radius, rng);
    out.record.draws = radius.y;
    radius_fn = [radius](double phi) { return radius(phi); };
    mesh = config_.perturbation.eta > 0.0 ? deform_hole_boundary(*nominal_, radius_fn, config_.blend_width) : *nominal_;
  } else {
    mesh = *nominal_;
  }
  const AntiplaneProblem problem(std::move(mesh));
  const auto probe = build_line_probe(problem.mesh(), config_.probe_anchor, config_.probe_direction,
                                      config_.probe_samples);
  const auto load = schedule();
  auto trajectory = run_quasistatic(problem, config_.solver, load, [&](const FractureState& s) {
    push_energy(out.record, s.applied, s.energy);
    out.record.position_trace.push_back(intersection_coordinate(s.alpha, problem.mesh(), probe));
  });
  const auto& final_state = trajectory.back();
  out.record.position = out.record.position_trace.back();
  out.record.label = to_string(classify_crack_2d(final_state.alpha, problem.mesh(), radius_fn, config_.classifier));
  out.nominal_field = field_on_nominal(*nominal_, problem.mesh(), final_state.alpha);
  out.field = final_state.alpha;
  out.mesh = problem.mesh();
  return out;
}

}  // namespace sfrac
