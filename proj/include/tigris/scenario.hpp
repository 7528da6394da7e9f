#pragma once

// Experiment inputs and planner outputs, with their on-disk formats.
// Scenario and result files are JSON documents carrying a "schema" field.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tigris/belief.hpp"
#include "tigris/information.hpp"
#include "tigris/planner.hpp"
#include "tigris/sensor.hpp"

namespace tigris {

inline constexpr std::string_view kScenarioSchema = "tigris.scenario/1";
inline constexpr std::string_view kTemplateSchema = "tigris.template/1";
inline constexpr std::string_view kResultSchema = "tigris.result/1";

/// Malformed or semantically invalid input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  double width_m = 2500.0;
  double height_m = 2500.0;
  double cell_size = 50.0;
  std::vector<GaussianCentroid> centroids;
  double background = 0.1;
  SensorConfig sensor;
  RewardWeights weights;
  PlannerConfig planner;
  VehicleState start{1250.0, 1250.0, 100.0, 0.0};
  std::vector<NoFlyZone> zones;
  std::uint64_t seed = 0;

  [[nodiscard]] GridSpec grid_spec() const;
  [[nodiscard]] BeliefGrid build_belief() const;
  /// Throws std::invalid_argument when any sub-config or the start is invalid.
  void validate() const;
  [[nodiscard]] PlanProblem problem(const BeliefGrid& grid) const;
};

/// Recipe for random scenarios. Everything except the centroids is copied
/// from `base`.
struct ScenarioTemplate {
  Scenario base;
  int centroid_count = 0;  // 0 draws uniformly from [min_centroids, max_centroids]
  int min_centroids = 1;
  int max_centroids = 12;
  double peak_lo = 0.4;
  double peak_hi = 0.9;
  double sigma_lo_cells = 2.0;
  double sigma_hi_cells = 8.0;
  double margin_fraction = 0.1;  // centroids stay this far inside each map edge

  void validate() const;
};

/// Desk-scale benchmark defaults: 2500 m square map, 50 m cells, B = 3000 m,
/// extend 200 m, near radius 400 m, 600 iterations per plan.
ScenarioTemplate desk_template();

Scenario generate_scenario(std::uint64_t seed, const ScenarioTemplate& tmpl);

std::string serialize_scenario(const Scenario& s);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

std::string serialize_template(const ScenarioTemplate& t);
ScenarioTemplate parse_template(std::string_view text);
ScenarioTemplate load_template(const std::filesystem::path& path);

std::string serialize_result(const PlanResult& r);
PlanResult parse_result(std::string_view text);
PlanResult load_result(const std::filesystem::path& path);
void save_result(const PlanResult& r, const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
/// Throws std::system_error-derived std::ios_base::failure on I/O errors.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace tigris
