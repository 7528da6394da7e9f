#pragma once

// Static artifacts for a planned path: a reward heatmap (PGM), the path as
// CSV, and an optional annotated color image (PPM).

#include <filesystem>
#include <string>
#include <vector>

#include "tigris/belief.hpp"
#include "tigris/planner.hpp"
#include "tigris/scenario.hpp"

namespace tigris {

/// Plain (P2) graymap with one pixel per cell, north up. Values are scaled
/// so the maximum maps to 255; an all-zero field renders black.
std::string heatmap_pgm(const GridSpec& grid, const std::vector<double>& values);

/// Header x,y,z,psi,cum_cost,cum_info then one row per path node.
std::string path_csv(const PlanResult& result);

/// Plain (P3) pixmap: heatmap background, path in red, heading ticks at nodes.
std::string overlay_ppm(const GridSpec& grid, const std::vector<double>& values, const PlanResult& result,
                        int pixels_per_cell = 8);

struct RenderedFiles {
  std::filesystem::path heatmap;
  std::filesystem::path path;
  std::filesystem::path overlay;  // empty when not requested
};

/// Writes <prefix>_heatmap.pgm, <prefix>_path.csv and, if `overlay`,
/// <prefix>_overlay.ppm. Throws std::ios_base::failure when unwritable.
RenderedFiles render(const PlanResult& result, const Scenario& scenario, const std::filesystem::path& prefix,
                     bool overlay = true);

}  // namespace tigris
