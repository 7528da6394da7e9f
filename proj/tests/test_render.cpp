#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tigris/render.hpp"
#include "tigris/scenario.hpp"

using namespace tigris;

namespace {

std::vector<std::string> tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

GridSpec grid(int w, int h) {
  GridSpec g;
  g.width = w;
  g.height = h;
  g.cell_size = 10.0;
  return g;
}

PlanResult root_only() {
  PlanResult r;
  r.states.push_back({15, 25, 100, 0});
  r.cumulative_cost.push_back(0);
  r.cumulative_info.push_back(1.5);
  return r;
}

}  // namespace

TEST_CASE("constant heatmap") {
  const std::vector<double> v(12, 0.3);
  const auto t = tokens(heatmap_pgm(grid(4, 3), v));
  REQUIRE(t.size() == 4 + 12);
  CHECK(t[0] == "P2");
  CHECK(t[1] == "4");
  CHECK(t[2] == "3");
  CHECK(t[3] == "255");
  for (std::size_t i = 4; i < t.size(); ++i) CHECK(t[i] == "255");
}

TEST_CASE("zero heatmap is black") {
  const auto t = tokens(heatmap_pgm(grid(2, 2), std::vector<double>(4, 0.0)));
  for (std::size_t i = 4; i < t.size(); ++i) CHECK(t[i] == "0");
}

TEST_CASE("heatmap puts north at the top") {
  std::vector<double> v(6, 0.0);
  v[5] = 1.0;  // col 1, row 2: the top row
  const auto t = tokens(heatmap_pgm(grid(2, 3), v));
  CHECK(t[4 + 1] == "255");
  CHECK(t[4 + 4] == "0");
}

TEST_CASE("heatmap size mismatch") {
  CHECK_THROWS_AS(heatmap_pgm(grid(2, 2), std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("root-only path") {
  const std::string csv = path_csv(root_only());
  CHECK(csv.rfind("x,y,z,psi,cum_cost,cum_info\n", 0) == 0);
  CHECK(line_count(csv) == 2);
}

TEST_CASE("overlay dimensions") {
  const auto t = tokens(overlay_ppm(grid(4, 3), std::vector<double>(12, 1.0), root_only(), 8));
  CHECK(t[0] == "P3");
  CHECK(t[1] == "32");
  CHECK(t[2] == "24");
  CHECK(t.size() == 4 + 32 * 24 * 3);
}

TEST_CASE("rendering a planned scenario to disk") {
  Scenario s = generate_scenario(4, desk_template());
  s.planner.max_iterations = 40;
  const BeliefGrid belief = s.build_belief();
  const PlanResult r = tigris_plan(s.problem(belief));
  const auto dir = std::filesystem::temp_directory_path() / "tigris_render_test";
  std::filesystem::create_directories(dir);
  const RenderedFiles f = render(r, s, dir / "case", true);
  CHECK(std::filesystem::exists(f.heatmap));
  CHECK(std::filesystem::exists(f.path));
  CHECK(std::filesystem::exists(f.overlay));
  CHECK(line_count(read_text(f.path)) == r.states.size() + 1);

  const RenderedFiles g = render(r, s, dir / "plain", false);
  CHECK(g.overlay.empty());
  CHECK(!std::filesystem::exists(dir / "plain_overlay.ppm"));
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(render(r, s, "/nonexistent/dir/x", true), std::ios_base::failure);
}
