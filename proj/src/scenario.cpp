#include "terrasim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "terrasim/population.hpp"
#include "terrasim/stability.hpp"

namespace terrasim {

namespace {

using nlohmann::json;

Bump bump(double x, double y, double amplitude, double width) {
  return Bump{Eigen::Vector2d(x, y), amplitude, width};
}

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ValidationError(std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("unknown key \"" + key + "\" in " + std::string(where));
    }
  }
}

double read_number(const json& obj, const char* key, std::string_view where, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) {
    throw ValidationError(std::string(where) + "." + key + " must be a number");
  }
  return it->get<double>();
}

int read_int(const json& obj, const char* key, std::string_view where, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ValidationError(std::string(where) + "." + key + " must be an integer");
  }
  return it->get<int>();
}

bool read_bool(const json& obj, const char* key, std::string_view where, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) {
    throw ValidationError(std::string(where) + "." + key + " must be a boolean");
  }
  return it->get<bool>();
}

std::pair<double, double> read_window(const json& obj, const char* key, std::string_view where,
                                      std::pair<double, double> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
    throw ValidationError(std::string(where) + "." + key + " must be a [start, end] pair");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

std::vector<Bump> read_bumps(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ValidationError(where + " must be an array of bumps");
  std::vector<Bump> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json& b = arr[k];
    reject_unknown(b, at, {"center", "amplitude", "width"});
    if (!b.contains("center") || !b.contains("amplitude") || !b.contains("width")) {
      throw ValidationError(at + " needs center, amplitude and width");
    }
    const json& c = b["center"];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw ValidationError(at + ".center must be an [x, y] pair");
    }
    out.push_back(bump(c[0].get<double>(), c[1].get<double>(),
                       read_number(b, "amplitude", at, 0.0), read_number(b, "width", at, 0.0)));
  }
  return out;
}

json bumps_to_json(const std::vector<Bump>& bumps) {
  json arr = json::array();
  for (const auto& b : bumps) {
    arr.push_back({{"center", {b.center.x(), b.center.y()}},
                   {"amplitude", b.amplitude},
                   {"width", b.width}});
  }
  return arr;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based position of the last byte read.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void check_bumps(const std::vector<Bump>& bumps, std::string_view name) {
  for (const auto& b : bumps) {
    if (!std::isfinite(b.center.x()) || !std::isfinite(b.center.y())) {
      throw ValidationError(std::string(name) + " bump center must be finite");
    }
    if (!(b.width > 0) || !std::isfinite(b.width)) {
      throw ValidationError(std::string(name) + " bump width must be > 0");
    }
    if (!(b.amplitude >= 0) || !std::isfinite(b.amplitude)) {
      throw ValidationError(std::string(name) + " bump amplitude must be >= 0");
    }
  }
}

}  // namespace

Scenario default_scenario() {
  Scenario s;
  s.initial.population = {bump(-0.45, 0.3, 1.0, 0.25), bump(0.4, 0.35, 1.0, 0.25),
                          bump(0.0, -0.5, 1.0, 0.25)};
  s.initial.jobs = {bump(0.05, 0.05, 1.2, 0.18), bump(-0.3, -0.2, 0.3, 0.3)};
  return s;
}

void Scenario::validate() const {
  if (!(grid.radius > 0) || !std::isfinite(grid.radius)) {
    throw ValidationError("grid radius must be > 0");
  }
  if (grid.nx < 4) throw ValidationError("nx must be >= 4");
  params.validate();
  schedule.validate();
  if (run.days < 1) throw ValidationError("days must be >= 1");
  if (run.substeps_per_day < 2 || run.substeps_per_day % 2 != 0) {
    throw ValidationError("substeps_per_day must be even and >= 2");
  }
  if (run.wealth_substeps_per_day < 0) {
    throw ValidationError("wealth_substeps_per_day must be >= 0");
  }
  if (output.snapshot_every < 0) throw ValidationError("snapshot_every must be >= 0");
  check_bumps(initial.population, "P0");
  check_bumps(initial.jobs, "E0");
  if (initial.efficiency_bumps) check_bumps(*initial.efficiency_bumps, "i0");
  if (!std::isfinite(initial.wealth)) throw ValidationError("W0 must be finite");
  if (!initial.efficiency_bumps &&
      !(initial.efficiency_constant >= 0 && initial.efficiency_constant <= 1)) {
    throw ValidationError("i0 must lie in [0, 1]");
  }

  // Field-level checks need the grid.
  const Grid g(grid.radius, grid.nx);
  const InitialFields f = build_initial_fields(*this, g);
  if (f.efficiency.min() < 0 || f.efficiency.max() > 1) {
    throw ValidationError("i0 must lie in [0, 1] on every cell");
  }
  if (!(integrate(g, f.population) + params.alpha * integrate(g, f.jobs) > 0)) {
    throw ValidationError("P0 and E0 are both zero on the grid");
  }
}

int wealth_substeps(const Scenario& s, const Grid& grid) {
  if (s.run.wealth_substeps_per_day > 0) return s.run.wealth_substeps_per_day;
  return min_wealth_substeps(s.params, grid, s.run.substeps_per_day);
}

InitialFields build_initial_fields(const Scenario& s, const Grid& grid) {
  InitialFields f{gaussian_mixture(grid, s.initial.population),
                  gaussian_mixture(grid, s.initial.jobs),
                  s.initial.efficiency_bumps ? gaussian_mixture(grid, *s.initial.efficiency_bumps)
                                             : constant_field(grid, s.initial.efficiency_constant),
                  constant_field(grid, s.initial.wealth)};
  return f;
}

Scenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    std::ostringstream os;
    os << "parse error at line " << line << ", column " << column << ": " << e.what();
    throw ScenarioParseError(os.str(), line, column);
  }

  Scenario s = default_scenario();
  reject_unknown(doc, "scenario", {"grid", "params", "schedule", "initial", "run", "output"});

  if (auto it = doc.find("grid"); it != doc.end()) {
    reject_unknown(*it, "grid", {"radius", "nx"});
    s.grid.radius = read_number(*it, "radius", "grid", s.grid.radius);
    s.grid.nx = read_int(*it, "nx", "grid", s.grid.nx);
  }
  if (auto it = doc.find("params"); it != doc.end()) {
    reject_unknown(*it, "params",
                   {"alpha", "beta0", "beta1", "beta2", "beta3", "nu", "kappa", "flux_w"});
    Params& p = s.params;
    p.alpha = read_number(*it, "alpha", "params", p.alpha);
    p.beta0 = read_number(*it, "beta0", "params", p.beta0);
    p.beta1 = read_number(*it, "beta1", "params", p.beta1);
    p.beta2 = read_number(*it, "beta2", "params", p.beta2);
    p.beta3 = read_number(*it, "beta3", "params", p.beta3);
    p.nu = read_number(*it, "nu", "params", p.nu);
    p.kappa = read_number(*it, "kappa", "params", p.kappa);
    p.flux_w = read_number(*it, "flux_w", "params", p.flux_w);
  }
  if (auto it = doc.find("schedule"); it != doc.end()) {
    reject_unknown(*it, "schedule", {"morning", "evening", "lambda_m", "lambda_e"});
    Schedule& sc = s.schedule;
    std::tie(sc.morning_start, sc.morning_end) =
        read_window(*it, "morning", "schedule", {sc.morning_start, sc.morning_end});
    std::tie(sc.evening_start, sc.evening_end) =
        read_window(*it, "evening", "schedule", {sc.evening_start, sc.evening_end});
    sc.lambda_m = read_number(*it, "lambda_m", "schedule", sc.lambda_m);
    sc.lambda_e = read_number(*it, "lambda_e", "schedule", sc.lambda_e);
  }
  if (auto it = doc.find("initial"); it != doc.end()) {
    reject_unknown(*it, "initial", {"P0", "E0", "i0", "W0"});
    if (it->contains("P0")) s.initial.population = read_bumps((*it)["P0"], "initial.P0");
    if (it->contains("E0")) s.initial.jobs = read_bumps((*it)["E0"], "initial.E0");
    if (it->contains("i0")) {
      const json& i0 = (*it)["i0"];
      if (i0.is_number()) {
        s.initial.efficiency_constant = i0.get<double>();
        s.initial.efficiency_bumps.reset();
      } else if (i0.is_array()) {
        s.initial.efficiency_bumps = read_bumps(i0, "initial.i0");
      } else {
        throw ValidationError("initial.i0 must be a number or an array of bumps");
      }
    }
    s.initial.wealth = read_number(*it, "W0", "initial", s.initial.wealth);
  }
  if (auto it = doc.find("run"); it != doc.end()) {
    reject_unknown(*it, "run", {"days", "substeps_per_day", "wealth_substeps_per_day"});
    s.run.days = read_int(*it, "days", "run", s.run.days);
    s.run.substeps_per_day = read_int(*it, "substeps_per_day", "run", s.run.substeps_per_day);
    s.run.wealth_substeps_per_day =
        read_int(*it, "wealth_substeps_per_day", "run", s.run.wealth_substeps_per_day);
  }
  if (auto it = doc.find("output"); it != doc.end()) {
    reject_unknown(*it, "output", {"snapshot_every", "heatmaps"});
    s.output.snapshot_every = read_int(*it, "snapshot_every", "output", s.output.snapshot_every);
    s.output.heatmaps = read_bool(*it, "heatmaps", "output", s.output.heatmaps);
  }

  s.validate();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["grid"] = {{"radius", s.grid.radius}, {"nx", s.grid.nx}};
  doc["params"] = {{"alpha", s.params.alpha}, {"beta0", s.params.beta0},
                   {"beta1", s.params.beta1}, {"beta2", s.params.beta2},
                   {"beta3", s.params.beta3}, {"nu", s.params.nu},
                   {"kappa", s.params.kappa}, {"flux_w", s.params.flux_w}};
  doc["schedule"] = {{"morning", {s.schedule.morning_start, s.schedule.morning_end}},
                     {"evening", {s.schedule.evening_start, s.schedule.evening_end}},
                     {"lambda_m", s.schedule.lambda_m},
                     {"lambda_e", s.schedule.lambda_e}};
  json initial;
  initial["P0"] = bumps_to_json(s.initial.population);
  initial["E0"] = bumps_to_json(s.initial.jobs);
  if (s.initial.efficiency_bumps) {
    initial["i0"] = bumps_to_json(*s.initial.efficiency_bumps);
  } else {
    initial["i0"] = s.initial.efficiency_constant;
  }
  initial["W0"] = s.initial.wealth;
  doc["initial"] = initial;
  doc["run"] = {{"days", s.run.days},
                {"substeps_per_day", s.run.substeps_per_day},
                {"wealth_substeps_per_day", s.run.wealth_substeps_per_day}};
  doc["output"] = {{"snapshot_every", s.output.snapshot_every},
                   {"heatmaps", s.output.heatmaps}};
  return doc;
}

}  // namespace terrasim
