#include "tigris/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace tigris {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

int cells_along(double extent, double cell_size) {
  const double n = extent / cell_size;
  const double rounded = std::round(n);
  if (rounded < 1.0 || std::fabs(n - rounded) > 1e-9 * std::max(1.0, n)) {
    throw std::invalid_argument("map extent must be a positive multiple of cell_size");
  }
  return static_cast<int>(rounded);
}

// ---- JSON mapping ------------------------------------------------------

json state_to_json(const VehicleState& s) {
  return json{{"x", s.x}, {"y", s.y}, {"z", s.z}, {"psi", s.psi}};
}

VehicleState state_from_json(const json& j) {
  return VehicleState(j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>(),
                      j.at("psi").get<double>());
}

json sensor_to_json(const SensorConfig& c) {
  return json{{"pitch_theta", c.pitch}, {"vfov_Theta_v", c.vfov}, {"hfov_Theta_h", c.hfov},
              {"a", c.a},  {"b", c.b},   {"c", c.c},  {"beta", c.beta},   {"v_opt", c.v_opt}};
}

SensorConfig sensor_from_json(const json& j) {
  SensorConfig c;
  c.pitch = j.value("pitch_theta", c.pitch);
  c.vfov = j.value("vfov_Theta_v", c.vfov);
  c.hfov = j.value("hfov_Theta_h", c.hfov);
  c.a = j.value("a", c.a);
  c.b = j.value("b", c.b);
  c.c = j.value("c", c.c);
  c.beta = j.value("beta", c.beta);
  c.v_opt = j.value("v_opt", c.v_opt);
  return c;
}

json planner_to_json(const PlannerConfig& p) {
  return json{{"budget", p.budget},
              {"planning_time", p.planning_time},
              {"max_iterations", p.max_iterations},
              {"max_nodes", p.max_nodes},
              {"extend", p.extend},
              {"near_radius", p.near_radius},
              {"turn_radius", p.turn_radius},
              {"sampler", p.sampler == SamplerKind::Informed ? "informed" : "uniform"},
              {"edge_rewards", p.edge_rewards},
              {"prune", p.prune},
              {"seed", p.seed},
              {"z_min", p.altitude.lo},
              {"z_max", p.altitude.hi}};
}

PlannerConfig planner_from_json(const json& j) {
  PlannerConfig p;
  p.budget = j.value("budget", p.budget);
  p.planning_time = j.value("planning_time", p.planning_time);
  p.max_iterations = j.value("max_iterations", p.max_iterations);
  p.max_nodes = j.value("max_nodes", p.max_nodes);
  p.extend = j.value("extend", p.extend);
  p.near_radius = j.value("near_radius", p.near_radius);
  p.turn_radius = j.value("turn_radius", p.turn_radius);
  const std::string sampler = j.value("sampler", std::string("informed"));
  if (sampler == "informed") {
    p.sampler = SamplerKind::Informed;
  } else if (sampler == "uniform") {
    p.sampler = SamplerKind::Uniform;
  } else {
    throw FormatError("unknown sampler '" + sampler + "'");
  }
  p.edge_rewards = j.value("edge_rewards", p.edge_rewards);
  p.prune = j.value("prune", p.prune);
  p.seed = j.value("seed", p.seed);
  p.altitude.lo = j.value("z_min", p.altitude.lo);
  p.altitude.hi = j.value("z_max", p.altitude.hi);
  return p;
}

json zones_to_json(const std::vector<NoFlyZone>& zones) {
  json out = json::array();
  for (const NoFlyZone& z : zones) {
    json poly = json::array();
    for (const Point2& p : z.polygon) poly.push_back({p.x, p.y});
    out.push_back(poly);
  }
  return out;
}

std::vector<NoFlyZone> zones_from_json(const json& j) {
  std::vector<NoFlyZone> zones;
  for (const json& poly : j) {
    NoFlyZone z;
    for (const json& v : poly) z.polygon.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    zones.push_back(std::move(z));
  }
  return zones;
}

json scenario_common_to_json(const Scenario& s) {
  return json{{"map", {{"width_m", s.width_m}, {"height_m", s.height_m}, {"cell_size", s.cell_size}}},
              {"sensor", sensor_to_json(s.sensor)},
              {"weights", {{"r_p", s.weights.r_p}, {"r_n", s.weights.r_n}}},
              {"planner", planner_to_json(s.planner)},
              {"start", state_to_json(s.start)},
              {"zones", zones_to_json(s.zones)}};
}

void scenario_common_from_json(const json& j, Scenario& s) {
  const json& map = j.at("map");
  s.width_m = map.at("width_m").get<double>();
  s.height_m = map.at("height_m").get<double>();
  s.cell_size = map.at("cell_size").get<double>();
  if (j.contains("sensor")) s.sensor = sensor_from_json(j.at("sensor"));
  if (j.contains("weights")) {
    s.weights.r_p = j.at("weights").value("r_p", s.weights.r_p);
    s.weights.r_n = j.at("weights").value("r_n", s.weights.r_n);
  }
  if (j.contains("planner")) s.planner = planner_from_json(j.at("planner"));
  if (j.contains("start")) s.start = state_from_json(j.at("start"));
  if (j.contains("zones")) s.zones = zones_from_json(j.at("zones"));
}

void expect_schema(const json& j, std::string_view schema) {
  const std::string found = j.value("schema", std::string());
  if (found != schema) {
    throw FormatError("expected schema '" + std::string(schema) + "', found '" + found + "'");
  }
}

template <class Fn>
auto parse_json_document(std::string_view text, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

const char* segment_code(SegmentKind k) {
  switch (k) {
    case SegmentKind::Left: return "L";
    case SegmentKind::Right: return "R";
    case SegmentKind::Straight: return "S";
  }
  return "S";
}

SegmentKind segment_from_code(const std::string& code) {
  if (code == "L") return SegmentKind::Left;
  if (code == "R") return SegmentKind::Right;
  if (code == "S") return SegmentKind::Straight;
  throw FormatError("unknown segment kind '" + code + "'");
}

}  // namespace

GridSpec Scenario::grid_spec() const {
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell_size must be positive");
  return GridSpec{cells_along(width_m, cell_size), cells_along(height_m, cell_size), cell_size, {0.0, 0.0}};
}

BeliefGrid Scenario::build_belief() const { return build_prior(grid_spec(), centroids, background); }

void Scenario::validate() const {
  const GridSpec g = grid_spec();
  g.validate();
  for (const auto& c : centroids) c.validate();
  if (!(background >= 0.0 && background < 1.0)) throw std::invalid_argument("background must be in [0, 1)");
  sensor.validate();
  check_detection_continuity(sensor);
  weights.validate();
  planner.validate();
  for (const auto& z : zones) z.validate();
  if (!(start.z > 0.0)) throw std::invalid_argument("start altitude must be positive");
  if (start.x < 0.0 || start.y < 0.0 || start.x > width_m || start.y > height_m) {
    throw std::invalid_argument("start lies outside the map");
  }
  for (const auto& z : zones) {
    if (z.contains({start.x, start.y})) throw std::invalid_argument("start lies inside a no-fly zone");
  }
}

PlanProblem Scenario::problem(const BeliefGrid& grid) const {
  return PlanProblem{start, &grid, sensor, weights, planner, zones};
}

void ScenarioTemplate::validate() const {
  base.validate();
  if (centroid_count < 0) throw std::invalid_argument("centroid_count must be >= 0");
  if (centroid_count == 0 && !(min_centroids >= 1 && max_centroids >= min_centroids)) {
    throw std::invalid_argument("centroid count range must satisfy 1 <= min <= max");
  }
  if (!(peak_lo > 0.0 && peak_hi >= peak_lo && peak_hi <= 1.0)) {
    throw std::invalid_argument("peak range must lie in (0, 1]");
  }
  if (!(sigma_lo_cells > 0.0 && sigma_hi_cells >= sigma_lo_cells)) {
    throw std::invalid_argument("sigma range must be positive");
  }
  if (!(margin_fraction >= 0.0 && margin_fraction < 0.5)) {
    throw std::invalid_argument("margin_fraction must be in [0, 0.5)");
  }
}

ScenarioTemplate desk_template() {
  ScenarioTemplate t;
  t.base.width_m = 2500.0;
  t.base.height_m = 2500.0;
  t.base.cell_size = 50.0;
  t.base.planner.budget = 3000.0;
  t.base.planner.extend = 200.0;
  t.base.planner.near_radius = 400.0;
  t.base.planner.max_iterations = 600;
  t.base.start = VehicleState(1250.0, 1250.0, 100.0, 0.0);
  return t;
}

Scenario generate_scenario(std::uint64_t seed, const ScenarioTemplate& tmpl) {
  tmpl.validate();
  Scenario s = tmpl.base;
  s.seed = seed;
  s.planner.seed = splitmix64(seed);
  s.centroids.clear();

  std::mt19937_64 rng(splitmix64(seed ^ 0xC3A5C85C97CB3127ULL));
  int count = tmpl.centroid_count;
  if (count == 0) count = std::uniform_int_distribution<int>(tmpl.min_centroids, tmpl.max_centroids)(rng);

  const double mx = tmpl.margin_fraction * s.width_m;
  const double my = tmpl.margin_fraction * s.height_m;
  std::uniform_real_distribution<double> x(mx, s.width_m - mx);
  std::uniform_real_distribution<double> y(my, s.height_m - my);
  std::uniform_real_distribution<double> peak(tmpl.peak_lo, tmpl.peak_hi);
  std::uniform_real_distribution<double> sigma(tmpl.sigma_lo_cells * s.cell_size,
                                               tmpl.sigma_hi_cells * s.cell_size);
  for (int i = 0; i < count; ++i) {
    GaussianCentroid c;
    c.center.x = x(rng);
    c.center.y = y(rng);
    c.peak_prob = peak(rng);
    c.sigma = sigma(rng);
    s.centroids.push_back(c);
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  json j = scenario_common_to_json(s);
  j["schema"] = kScenarioSchema;
  j["seed"] = s.seed;
  json centroids = json::array();
  for (const auto& c : s.centroids) {
    centroids.push_back({{"x", c.center.x}, {"y", c.center.y}, {"peak_prob", c.peak_prob}, {"sigma", c.sigma}});
  }
  j["belief"] = {{"background", s.background}, {"centroids", centroids}};
  return j.dump(2) + "\n";
}

Scenario parse_scenario(std::string_view text) {
  Scenario s = parse_json_document(text, [](const json& j) {
    expect_schema(j, kScenarioSchema);
    Scenario out;
    scenario_common_from_json(j, out);
    out.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("belief")) {
      const json& b = j.at("belief");
      out.background = b.value("background", out.background);
      for (const json& c : b.value("centroids", json::array())) {
        GaussianCentroid g;
        g.center = {c.at("x").get<double>(), c.at("y").get<double>()};
        g.peak_prob = c.at("peak_prob").get<double>();
        g.sigma = c.at("sigma").get<double>();
        out.centroids.push_back(g);
      }
    }
    return out;
  });
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_text(path)); }

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  write_text(path, serialize_scenario(s));
}

std::string serialize_template(const ScenarioTemplate& t) {
  json j = scenario_common_to_json(t.base);
  j["schema"] = kTemplateSchema;
  j["belief"] = {{"background", t.base.background}};
  j["generator"] = {{"centroid_count", t.centroid_count}, {"min_centroids", t.min_centroids},
                    {"max_centroids", t.max_centroids},   {"peak_lo", t.peak_lo},
                    {"peak_hi", t.peak_hi},               {"sigma_lo_cells", t.sigma_lo_cells},
                    {"sigma_hi_cells", t.sigma_hi_cells}, {"margin_fraction", t.margin_fraction}};
  return j.dump(2) + "\n";
}

ScenarioTemplate parse_template(std::string_view text) {
  ScenarioTemplate t = parse_json_document(text, [](const json& j) {
    expect_schema(j, kTemplateSchema);
    ScenarioTemplate out;
    scenario_common_from_json(j, out.base);
    if (j.contains("belief")) out.base.background = j.at("belief").value("background", out.base.background);
    if (j.contains("generator")) {
      const json& g = j.at("generator");
      out.centroid_count = g.value("centroid_count", out.centroid_count);
      out.min_centroids = g.value("min_centroids", out.min_centroids);
      out.max_centroids = g.value("max_centroids", out.max_centroids);
      out.peak_lo = g.value("peak_lo", out.peak_lo);
      out.peak_hi = g.value("peak_hi", out.peak_hi);
      out.sigma_lo_cells = g.value("sigma_lo_cells", out.sigma_lo_cells);
      out.sigma_hi_cells = g.value("sigma_hi_cells", out.sigma_hi_cells);
      out.margin_fraction = g.value("margin_fraction", out.margin_fraction);
    }
    return out;
  });
  t.validate();
  return t;
}

ScenarioTemplate load_template(const std::filesystem::path& path) { return parse_template(read_text(path)); }

std::string serialize_result(const PlanResult& r) {
  json states = json::array();
  for (const auto& s : r.states) states.push_back({s.x, s.y, s.z, s.psi});
  json edges = json::array();
  for (const auto& e : r.edges) {
    json segs = json::array();
    for (const auto& seg : e.segments) segs.push_back({segment_code(seg.kind), seg.length});
    edges.push_back({{"start", state_to_json(e.start)},
                     {"end", state_to_json(e.end)},
                     {"turn_radius", e.turn_radius},
                     {"total_length", e.total_length},
                     {"segments", segs}});
  }
  json curve = json::array();
  for (const auto& c : r.curve) {
    json pt{{"iteration", c.iteration}, {"tree_info", c.tree_info}, {"path_info", c.path_info}};
    // Wall-clock stamps would make iteration-bounded results irreproducible.
    if (r.time_bounded) pt["seconds"] = c.seconds;
    curve.push_back(pt);
  }
  json j{{"schema", kResultSchema},
         {"planner", r.planner},
         {"info", r.info},
         {"tree_info", r.tree_info},
         {"cost", r.cost},
         {"node_count", r.node_count},
         {"iterations", r.iterations},
         {"time_bounded", r.time_bounded},
         {"states", states},
         {"cumulative_cost", r.cumulative_cost},
         {"cumulative_info", r.cumulative_info},
         {"edges", edges},
         {"curve", curve}};
  return j.dump(2) + "\n";
}

PlanResult parse_result(std::string_view text) {
  return parse_json_document(text, [](const json& j) {
    expect_schema(j, kResultSchema);
    PlanResult r;
    r.planner = j.at("planner").get<std::string>();
    r.info = j.at("info").get<double>();
    r.tree_info = j.at("tree_info").get<double>();
    r.cost = j.at("cost").get<double>();
    r.node_count = j.at("node_count").get<std::size_t>();
    r.iterations = j.at("iterations").get<std::uint64_t>();
    r.time_bounded = j.at("time_bounded").get<bool>();
    for (const json& s : j.at("states")) {
      r.states.emplace_back(s.at(0).get<double>(), s.at(1).get<double>(), s.at(2).get<double>(),
                            s.at(3).get<double>());
    }
    r.cumulative_cost = j.at("cumulative_cost").get<std::vector<double>>();
    r.cumulative_info = j.at("cumulative_info").get<std::vector<double>>();
    for (const json& e : j.at("edges")) {
      PathEdge edge;
      edge.start = state_from_json(e.at("start"));
      edge.end = state_from_json(e.at("end"));
      edge.turn_radius = e.at("turn_radius").get<double>();
      edge.total_length = e.at("total_length").get<double>();
      for (const json& seg : e.at("segments")) {
        edge.segments.push_back({segment_from_code(seg.at(0).get<std::string>()), seg.at(1).get<double>()});
      }
      r.edges.push_back(std::move(edge));
    }
    for (const json& c : j.at("curve")) {
      CurvePoint pt;
      pt.iteration = c.at("iteration").get<std::uint64_t>();
      pt.tree_info = c.at("tree_info").get<double>();
      pt.path_info = c.at("path_info").get<double>();
      pt.seconds = c.value("seconds", 0.0);
      r.curve.push_back(pt);
    }
    return r;
  });
}

PlanResult load_result(const std::filesystem::path& path) { return parse_result(read_text(path)); }

void save_result(const PlanResult& r, const std::filesystem::path& path) {
  write_text(path, serialize_result(r));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::ios_base::failure("failed writing '" + path.string() + "'");
}

}  // namespace tigris
