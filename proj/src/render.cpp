#include "tigris/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tigris/information.hpp"

namespace tigris {

namespace {

std::vector<int> gray_levels(const GridSpec& grid, const std::vector<double>& values) {
  if (values.size() != grid.cell_count()) throw std::invalid_argument("value count does not match grid");
  const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  std::vector<int> out(values.size(), 0);
  if (!(peak > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = static_cast<int>(std::lround(255.0 * std::clamp(values[i] / peak, 0.0, 1.0)));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Canvas {
 public:
  Canvas(int w, int h) : w_(w), h_(h), px_(static_cast<std::size_t>(w) * h) {}
  void set(int x, int y, std::array<int, 3> c) {
    if (x >= 0 && y >= 0 && x < w_ && y < h_) px_[static_cast<std::size_t>(y) * w_ + x] = c;
  }
  void line(double x0, double y0, double x1, double y1, std::array<int, 3> c) {
    const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::fabs(x1 - x0), std::fabs(y1 - y0)))));
    for (int i = 0; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      set(static_cast<int>(std::floor(x0 + t * (x1 - x0))), static_cast<int>(std::floor(y0 + t * (y1 - y0))), c);
    }
  }
  std::string ppm() const {
    std::ostringstream out;
    out << "P3\n" << w_ << ' ' << h_ << "\n255\n";
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        const auto& c = px_[static_cast<std::size_t>(y) * w_ + x];
        out << c[0] << ' ' << c[1] << ' ' << c[2] << (x + 1 < w_ ? ' ' : '\n');
      }
    }
    return out.str();
  }

 private:
  int w_, h_;
  std::vector<std::array<int, 3>> px_;
};

}  // namespace

std::string heatmap_pgm(const GridSpec& grid, const std::vector<double>& values) {
  grid.validate();
  const std::vector<int> levels = gray_levels(grid, values);
  std::ostringstream out;
  out << "P2\n" << grid.width << ' ' << grid.height << "\n255\n";
  for (int row = grid.height - 1; row >= 0; --row) {
    for (int col = 0; col < grid.width; ++col) {
      out << levels[static_cast<std::size_t>(row) * grid.width + col] << (col + 1 < grid.width ? ' ' : '\n');
    }
  }
  return out.str();
}

std::string path_csv(const PlanResult& result) {
  std::string out = "x,y,z,psi,cum_cost,cum_info\n";
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    const VehicleState& s = result.states[i];
    const double cost = i < result.cumulative_cost.size() ? result.cumulative_cost[i] : 0.0;
    const double info = i < result.cumulative_info.size() ? result.cumulative_info[i] : 0.0;
    out += fmt(s.x) + ',' + fmt(s.y) + ',' + fmt(s.z) + ',' + fmt(s.psi) + ',' + fmt(cost) + ',' + fmt(info) + '\n';
  }
  return out;
}

std::string overlay_ppm(const GridSpec& grid, const std::vector<double>& values, const PlanResult& result,
                        int pixels_per_cell) {
  grid.validate();
  if (pixels_per_cell < 1) throw std::invalid_argument("pixels_per_cell must be >= 1");
  const std::vector<int> levels = gray_levels(grid, values);
  const int w = grid.width * pixels_per_cell;
  const int h = grid.height * pixels_per_cell;
  Canvas canvas(w, h);
  for (int y = 0; y < h; ++y) {
    const int row = grid.height - 1 - y / pixels_per_cell;
    for (int x = 0; x < w; ++x) {
      const int g = levels[static_cast<std::size_t>(row) * grid.width + x / pixels_per_cell];
      canvas.set(x, y, {g, g, g});
    }
  }

  const double scale = pixels_per_cell / grid.cell_size;
  const auto px = [&](double wx) { return (wx - grid.origin.x) * scale; };
  const auto py = [&](double wy) { return h - (wy - grid.origin.y) * scale; };

  for (const PathEdge& e : result.edges) {
    const int steps = std::max(1, static_cast<int>(std::ceil(e.total_length / 5.0)));
    VehicleState prev = e.start;
    for (int k = 1; k <= steps; ++k) {
      const VehicleState next = k == steps ? e.end : pose_at(e, e.total_length * k / steps);
      canvas.line(px(prev.x), py(prev.y), px(next.x), py(next.y), {255, 0, 0});
      prev = next;
    }
  }
  const double arrow = 1.5 * pixels_per_cell;
  for (const VehicleState& s : result.states) {
    const double x0 = px(s.x);
    const double y0 = py(s.y);
    canvas.line(x0, y0, x0 + arrow * std::cos(s.psi), y0 - arrow * std::sin(s.psi), {0, 160, 255});
    canvas.set(static_cast<int>(std::floor(x0)), static_cast<int>(std::floor(y0)), {255, 255, 0});
  }
  return canvas.ppm();
}

RenderedFiles render(const PlanResult& result, const Scenario& scenario, const std::filesystem::path& prefix,
                     bool overlay) {
  const BeliefGrid grid = scenario.build_belief();
  const std::vector<double> values =
      view_rewards(grid, scenario.sensor, scenario.weights, scenario.planner.altitude);
  RenderedFiles files;
  files.heatmap = prefix.string() + "_heatmap.pgm";
  files.path = prefix.string() + "_path.csv";
  write_text(files.heatmap, heatmap_pgm(grid.spec(), values));
  write_text(files.path, path_csv(result));
  if (overlay) {
    files.overlay = prefix.string() + "_overlay.ppm";
    write_text(files.overlay, overlay_ppm(grid.spec(), values, result));
  }
  return files;
}

}  // namespace tigris
