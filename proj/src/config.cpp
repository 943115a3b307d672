#include "sfrac/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sfrac/errors.hpp"

namespace sfrac {

using json = nlohmann::ordered_json;

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::double_well: return "double_well";
    case Scenario::bar_sharp: return "bar_sharp";
    case Scenario::bar_phasefield: return "bar_phasefield";
    case Scenario::antiplane_2d: return "antiplane_2d";
  }
  return "antiplane_2d";
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "double_well") return Scenario::double_well;
  if (s == "bar_sharp") return Scenario::bar_sharp;
  if (s == "bar_phasefield") return Scenario::bar_phasefield;
  if (s == "antiplane_2d") return Scenario::antiplane_2d;
  throw ConfigError("unknown scenario '" + s + "'");
}

BarParams RunConfig::bar_params() const {
  return {youngs_area, solver.ell, solver.tol_stag, solver.max_staggered};
}

void RunConfig::validate() const {
  if (samples == 0) throw ConfigError("samples must be at least 1");
  if (workers == 0) throw ConfigError("workers must be at least 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  try {
    solver.validate();
    perturbation.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (solver.n_steps == 0 || !(solver.load_increment > 0.0)) throw ConfigError("loading needs steps and a positive increment");
  if (!(youngs_area > 0.0)) throw ConfigError("youngs_area must be positive");
  if (!(bar_length > 0.0)) throw ConfigError("bar_length must be positive");
  if (cells < 1) throw ConfigError("cells must be at least 1");
  if (!(sizing.h_min > 0.0) || sizing.h_max < sizing.h_min) throw ConfigError("need 0 < h_min <= h_max");
  if (!(blend_width > 0.0)) throw ConfigError("blend_width must be positive");
  if (!(classifier.threshold > 0.0 && classifier.threshold <= 1.0)) throw ConfigError("threshold must be in (0, 1]");
  if (probe_samples < 2 || kde_points < 2) throw ConfigError("probe_samples and kde_points must be at least 2");
  if (!(window > 0.0)) throw ConfigError("window must be positive");
  if (profile.kind == ProfileKind::table &&
      (profile.xs.size() < 2 || profile.xs.size() != profile.values.size()))
    throw ConfigError("tabulated profile needs matching x and values with at least two points");
  if (scenario == Scenario::antiplane_2d && perturbation.kind == PerturbationKind::white_noise_dissipation)
    throw ConfigError("antiplane_2d supports only fourier_radius or none perturbations");
  if ((scenario == Scenario::bar_sharp || scenario == Scenario::bar_phasefield) &&
      perturbation.kind == PerturbationKind::fourier_radius)
    throw ConfigError("bar scenarios support only white_noise_dissipation or none perturbations");
}

RunConfig default_config(Scenario scenario) {
  RunConfig c;
  c.scenario = scenario;
  switch (scenario) {
    case Scenario::double_well:
      c.samples = 10000;
      c.perturbation.kind = PerturbationKind::white_noise_dissipation;
      c.perturbation.eta = 0.01;
      c.attractors = {0.0, 1.0};
      break;
    case Scenario::bar_sharp:
      c.samples = 10000;
      c.cells = 1000;
      c.perturbation.kind = PerturbationKind::white_noise_dissipation;
      c.perturbation.eta = 0.01;
      break;
    case Scenario::bar_phasefield:
      c.samples = 500;
      c.cells = 2000;
      c.solver.ell = 0.001 * c.bar_length;
      c.solver.n_steps = 10;
      c.solver.max_staggered = 20000;
      c.perturbation.kind = PerturbationKind::white_noise_dissipation;
      c.perturbation.eta = 1.0;
      break;
    case Scenario::antiplane_2d:
      c.samples = 30;
      c.sizing.h_min = c.solver.ell / 2.0;
      c.sizing.h_max = c.solver.ell;
      c.sizing.band_width = 6.0 * c.solver.ell;
      c.blend_width = 4.0 * c.solver.ell;
      c.perturbation.kind = PerturbationKind::fourier_radius;
      c.perturbation.eta = 0.02;
      break;
  }
  return c;
}

namespace {

// Object reader that remembers which keys were consumed so leftovers can be rejected.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("'" + path_ + "' must be an object");
  }

  const json* find(const char* key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string where(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void read(const char* key, double& out) {
    if (auto* v = find(key)) {
      if (!v->is_number()) throw ConfigError("'" + where(key) + "' must be a number");
      out = v->get<double>();
    }
  }
  void read(const char* key, std::size_t& out) {
    if (auto* v = find(key)) {
      if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<long long>() < 0))
        throw ConfigError("'" + where(key) + "' must be a non-negative integer");
      out = v->get<std::size_t>();
    }
  }
  void read(const char* key, std::uint64_t& out, int) {
    if (auto* v = find(key)) {
      if (!v->is_number_unsigned()) throw ConfigError("'" + where(key) + "' must be a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void read(const char* key, int& out) {
    if (auto* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError("'" + where(key) + "' must be an integer");
      out = v->get<int>();
    }
  }
  void read(const char* key, bool& out) {
    if (auto* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError("'" + where(key) + "' must be true or false");
      out = v->get<bool>();
    }
  }
  void read(const char* key, std::string& out) {
    if (auto* v = find(key)) {
      if (!v->is_string()) throw ConfigError("'" + where(key) + "' must be a string");
      out = v->get<std::string>();
    }
  }
  void read(const char* key, std::vector<double>& out) {
    if (auto* v = find(key)) {
      if (!v->is_array()) throw ConfigError("'" + where(key) + "' must be an array of numbers");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) throw ConfigError("'" + where(key) + "' must be an array of numbers");
        out.push_back(e.get<double>());
      }
    }
  }
  void read(const char* key, Point2& out) {
    if (auto* v = find(key)) {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
        throw ConfigError("'" + where(key) + "' must be a pair of numbers");
      out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }
  }
  void read(const char* key, std::optional<double>& out) {
    if (auto* v = find(key)) {
      if (v->is_null()) {
        out.reset();
      } else if (v->is_number()) {
        out = v->get<double>();
      } else {
        throw ConfigError("'" + where(key) + "' must be a number or null");
      }
    }
  }
  template <class Parse, class T>
  void read_enum(const char* key, T& out, Parse parse) {
    std::string s;
    read(key, s);
    if (j_.contains(key)) {
      try {
        out = parse(s);
      } catch (const InvalidArgument& e) {
        throw ConfigError("'" + where(key) + "': " + e.what());
      }
    }
  }

  Section child(const char* key) {
    static const json empty = json::object();
    auto* v = find(key);
    return Section(v ? *v : empty, where(key));
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!used_.count(item.key())) throw ConfigError("unknown key '" + where(item.key().c_str()) + "'");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

json point(Point2 p) { return json::array({p.x, p.y}); }

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  Section root(doc, "");
  std::string scenario;
  root.read("scenario", scenario);
  if (scenario.empty()) throw ConfigError("'scenario' is required");
  RunConfig c = default_config(scenario_from_string(scenario));

  root.read("samples", c.samples);
  root.read("master_seed", c.master_seed, 0);
  root.read("output_dir", c.output_dir);
  root.read("workers", c.workers);

  auto material = root.child("material");
  material.read("mu", c.solver.mu);
  material.read("G_c", c.solver.G_c);
  material.read("ell", c.solver.ell);
  material.read("youngs_area", c.youngs_area);
  material.finish();

  auto geometry = root.child("geometry");
  geometry.read("a", c.geometry.a);
  geometry.read("hole_center", c.geometry.hole_center);
  geometry.read("radius", c.geometry.radius);
  geometry.read("slit_x", c.geometry.slit_x);
  geometry.read("slit_tip_y", c.geometry.slit_tip_y);
  geometry.read("bar_length", c.bar_length);
  geometry.finish();

  auto mesh = root.child("mesh");
  mesh.read("h_min", c.sizing.h_min);
  mesh.read("h_max", c.sizing.h_max);
  mesh.read_enum("refine_region", c.sizing.region, refine_region_from_string);
  mesh.read("band_width", c.sizing.band_width);
  mesh.read("cells", c.cells);
  mesh.finish();

  auto solver = root.child("solver");
  solver.read_enum("model", c.solver.model, w_model_from_string);
  solver.read("tol_ir", c.solver.tol_ir);
  solver.read("gamma", c.solver.gamma_override);
  solver.read("tol_nr", c.solver.tol_nr);
  solver.read("tol_stag", c.solver.tol_stag);
  solver.read("load_increment", c.solver.load_increment);
  solver.read("n_steps", c.solver.n_steps);
  solver.read("max_staggered", c.solver.max_staggered);
  solver.read("max_newton", c.solver.max_newton);
  solver.read("cg_rel_tol", c.solver.cg_rel_tol);
  solver.finish();

  auto pert = root.child("perturbation");
  pert.read_enum("kind", c.perturbation.kind, perturbation_kind_from_string);
  pert.read("eta", c.perturbation.eta);
  pert.read("harmonics", c.perturbation.harmonics);
  pert.read("c", c.perturbation.c);
  pert.read("s", c.perturbation.s);
  pert.read("blend_width", c.blend_width);
  pert.finish();

  auto profile = root.child("profile");
  profile.read_enum("kind", c.profile.kind, profile_kind_from_string);
  profile.read("x", c.profile.xs);
  profile.read("values", c.profile.values);
  profile.finish();

  auto analysis = root.child("analysis");
  analysis.read("threshold", c.classifier.threshold);
  analysis.read("contact_width", c.classifier.contact_width);
  analysis.read("probe_anchor", c.probe_anchor);
  analysis.read("probe_direction", c.probe_direction);
  analysis.read("probe_samples", c.probe_samples);
  analysis.read("attractors", c.attractors);
  analysis.read("window", c.window);
  analysis.read("kde_points", c.kde_points);
  analysis.finish();

  auto output = root.child("output");
  output.read("write_fields", c.write_fields);
  output.finish();

  root.finish();
  c.perturbation.master_seed = c.master_seed;
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  j["samples"] = c.samples;
  j["master_seed"] = c.master_seed;
  j["output_dir"] = c.output_dir;
  j["workers"] = c.workers;
  j["material"] = {{"mu", c.solver.mu}, {"G_c", c.solver.G_c}, {"ell", c.solver.ell}, {"youngs_area", c.youngs_area}};
  j["geometry"] = {{"a", c.geometry.a},
                   {"hole_center", point(c.geometry.hole_center)},
                   {"radius", c.geometry.radius},
                   {"slit_x", c.geometry.slit_x},
                   {"slit_tip_y", c.geometry.slit_tip_y},
                   {"bar_length", c.bar_length}};
  j["mesh"] = {{"h_min", c.sizing.h_min},
               {"h_max", c.sizing.h_max},
               {"refine_region", to_string(c.sizing.region)},
               {"band_width", c.sizing.band_width},
               {"cells", c.cells}};
  json gamma = nullptr;
  if (c.solver.gamma_override) gamma = *c.solver.gamma_override;
  j["solver"] = {{"model", to_string(c.solver.model)},
                 {"tol_ir", c.solver.tol_ir},
                 {"gamma", gamma},
                 {"tol_nr", c.solver.tol_nr},
                 {"tol_stag", c.solver.tol_stag},
                 {"load_increment", c.solver.load_increment},
                 {"n_steps", c.solver.n_steps},
                 {"max_staggered", c.solver.max_staggered},
                 {"max_newton", c.solver.max_newton},
                 {"cg_rel_tol", c.solver.cg_rel_tol}};
  j["perturbation"] = {{"kind", to_string(c.perturbation.kind)},
                       {"eta", c.perturbation.eta},
                       {"harmonics", c.perturbation.harmonics},
                       {"c", c.perturbation.c},
                       {"s", c.perturbation.s},
                       {"blend_width", c.blend_width}};
  j["profile"] = {{"kind", to_string(c.profile.kind)}, {"x", c.profile.xs}, {"values", c.profile.values}};
  j["analysis"] = {{"threshold", c.classifier.threshold},
                   {"contact_width", c.classifier.contact_width},
                   {"probe_anchor", point(c.probe_anchor)},
                   {"probe_direction", point(c.probe_direction)},
                   {"probe_samples", c.probe_samples},
                   {"attractors", c.attractors},
                   {"window", c.window},
                   {"kde_points", c.kde_points}};
  j["output"] = {{"write_fields", c.write_fields}};
  return j.dump(2) + "\n";
}

}  // namespace sfrac
