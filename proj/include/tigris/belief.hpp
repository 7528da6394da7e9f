#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tigris/polygon.hpp"

namespace tigris {

/// Grid geometry. Cell (col, row) has index row * width + col and its lower
/// left corner at origin + (col, row) * cell_size.
struct GridSpec {
  int width = 0;
  int height = 0;
  double cell_size = 1.0;
  Point2 origin;

  void validate() const;
  [[nodiscard]] double extent_x() const { return width * cell_size; }
  [[nodiscard]] double extent_y() const { return height * cell_size; }
  [[nodiscard]] std::size_t cell_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
};

struct GaussianCentroid {
  Point2 center;
  double peak_prob = 0.5;
  double sigma = 1.0;  // meters

  void validate() const;
};

/// Probability clamp applied by build_prior.
inline constexpr double kProbEpsilon = 1e-6;

class BeliefGrid {
 public:
  BeliefGrid() = default;
  /// Throws std::invalid_argument if probs has the wrong size or values
  /// outside [0, 1].
  BeliefGrid(GridSpec spec, std::vector<double> probs);

  [[nodiscard]] const GridSpec& spec() const { return spec_; }
  [[nodiscard]] std::size_t size() const { return probs_.size(); }
  [[nodiscard]] double prob(std::size_t cell) const { return probs_[cell]; }
  [[nodiscard]] std::span<const double> probs() const { return probs_; }

  [[nodiscard]] Point2 cell_center(std::size_t cell) const;
  [[nodiscard]] int col_of(std::size_t cell) const {
    return static_cast<int>(cell % static_cast<std::size_t>(spec_.width));
  }
  [[nodiscard]] int row_of(std::size_t cell) const {
    return static_cast<int>(cell / static_cast<std::size_t>(spec_.width));
  }
  [[nodiscard]] std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(spec_.width) +
           static_cast<std::size_t>(col);
  }
  /// Cell containing a point, if inside the grid.
  [[nodiscard]] std::optional<std::size_t> cell_at(Point2 p) const;
  [[nodiscard]] bool contains(Point2 p) const;

 private:
  GridSpec spec_;
  std::vector<double> probs_;
};

BeliefGrid build_prior(const GridSpec& spec, std::span<const GaussianCentroid> centroids,
                       double background);

/// Binary Shannon entropy in bits.
double entropy(double p);

/// Posterior P(X|Z) or P(X|not Z). Returns the prior when the evidence has
/// zero probability.
double bayes_update(double prior, double tpr, double fpr, bool measurement);

}  // namespace tigris
