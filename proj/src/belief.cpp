#include "tigris/belief.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tigris {

void GridSpec::validate() const {
  if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell_size must be positive");
}

void GaussianCentroid::validate() const {
  if (!(peak_prob > 0.0 && peak_prob <= 1.0)) {
    throw std::invalid_argument("centroid peak_prob must be in (0, 1]");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("centroid sigma must be positive");
}

BeliefGrid::BeliefGrid(GridSpec spec, std::vector<double> probs)
    : spec_(spec), probs_(std::move(probs)) {
  spec_.validate();
  if (probs_.size() != spec_.cell_count()) {
    throw std::invalid_argument("probability array has " + std::to_string(probs_.size()) +
                                " entries, expected " + std::to_string(spec_.cell_count()));
  }
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("cell probability outside [0, 1]");
  }
}

Point2 BeliefGrid::cell_center(std::size_t cell) const {
  return {spec_.origin.x + (col_of(cell) + 0.5) * spec_.cell_size,
          spec_.origin.y + (row_of(cell) + 0.5) * spec_.cell_size};
}

bool BeliefGrid::contains(Point2 p) const {
  return p.x >= spec_.origin.x && p.y >= spec_.origin.y &&
         p.x <= spec_.origin.x + spec_.extent_x() && p.y <= spec_.origin.y + spec_.extent_y();
}

std::optional<std::size_t> BeliefGrid::cell_at(Point2 p) const {
  if (!contains(p)) return std::nullopt;
  const int col = std::min(spec_.width - 1,
                           static_cast<int>((p.x - spec_.origin.x) / spec_.cell_size));
  const int row = std::min(spec_.height - 1,
                           static_cast<int>((p.y - spec_.origin.y) / spec_.cell_size));
  return index(col, row);
}

BeliefGrid build_prior(const GridSpec& spec, std::span<const GaussianCentroid> centroids,
                       double background) {
  spec.validate();
  if (!(background >= 0.0 && background < 1.0)) {
    throw std::invalid_argument("background must be in [0, 1)");
  }
  for (const auto& c : centroids) c.validate();

  std::vector<double> probs(spec.cell_count(), background);
  for (int row = 0; row < spec.height; ++row) {
    const double cy = spec.origin.y + (row + 0.5) * spec.cell_size;
    for (int col = 0; col < spec.width; ++col) {
      const double cx = spec.origin.x + (col + 0.5) * spec.cell_size;
      double p = background;
      for (const auto& c : centroids) {
        const double dx = cx - c.center.x;
        const double dy = cy - c.center.y;
        p += c.peak_prob * std::exp(-(dx * dx + dy * dy) / (2.0 * c.sigma * c.sigma));
      }
      probs[static_cast<std::size_t>(row) * spec.width + col] = std::min(1.0 - kProbEpsilon, p);
    }
  }
  return BeliefGrid(spec, std::move(probs));
}

double entropy(double p) {
  const auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
  return term(p) + term(1.0 - p);
}

double bayes_update(double prior, double tpr, double fpr, bool measurement) {
  const double hit = measurement ? tpr : 1.0 - tpr;
  const double false_hit = measurement ? fpr : 1.0 - fpr;
  const double num = hit * prior;
  const double den = num + false_hit * (1.0 - prior);
  if (den <= 0.0) return prior;
  return std::clamp(num / den, 0.0, 1.0);
}

}  // namespace tigris
