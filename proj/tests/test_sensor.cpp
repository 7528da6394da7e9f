#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "tigris/bench.hpp"
#include "tigris/oracle.hpp"
#include "tigris/sensor.hpp"

using namespace tigris;

namespace {

SensorConfig camera(double pitch_deg, double vfov_deg, double hfov_deg) {
  SensorConfig cfg;
  cfg.pitch = deg_to_rad(pitch_deg);
  cfg.vfov = deg_to_rad(vfov_deg);
  cfg.hfov = deg_to_rad(hfov_deg);
  return cfg;
}

BeliefGrid flat_grid(int w, int h, double cell, double p) {
  GridSpec g;
  g.width = w;
  g.height = h;
  g.cell_size = cell;
  return build_prior(g, {}, p);
}

}  // namespace

TEST_CASE("detection rate") {
  SensorConfig cfg;
  cfg.c = 100.0;
  cfg.beta = 100.0;
  CHECK(detection_rate(100.0, cfg) == doctest::Approx(0.5));
  CHECK(detection_rate(50.0, cfg) == doctest::Approx(1.0 / (1.0 + std::exp(-2.5))));
  CHECK(detection_rate(50.0, cfg) == doctest::Approx(0.9241).epsilon(1e-4));
  CHECK(detection_rate(100.01, cfg) == 0.5);
  CHECK(detection_rate(1e6, cfg) == 0.5);
}

TEST_CASE("detection continuity at beta") {
  SensorConfig cfg;
  CHECK_NOTHROW(check_detection_continuity(cfg));
  cfg.c = 100.0;
  cfg.beta = 250.0;
  CHECK_THROWS_AS(check_detection_continuity(cfg), std::invalid_argument);
}

TEST_CASE("sensor geometry validation") {
  CHECK_NOTHROW(camera(65, 40, 60).validate());
  CHECK_THROWS_AS(camera(80, 40, 60).validate(), std::invalid_argument);
  CHECK_THROWS_AS(camera(30, 0, 60).validate(), std::invalid_argument);
}

TEST_CASE("footprint near edge") {
  const SensorConfig cfg = camera(65, 40, 60);
  const FootprintPolygon fp = footprint({0, 0, 100, 0}, cfg);
  const Point2 near_mid{0.5 * (fp.corners[0].x + fp.corners[3].x), 0.5 * (fp.corners[0].y + fp.corners[3].y)};
  CHECK(near_mid.x == doctest::Approx(100.0));
  CHECK(near_mid.y == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(fp.corners[3].y - fp.corners[0].y) / 2 == doctest::Approx(81.65).epsilon(1e-4));
  CHECK(fp.corners[1].x == doctest::Approx(100.0 * std::tan(deg_to_rad(85.0))));
}

TEST_CASE("nadir footprint is centered under the vehicle") {
  const SensorConfig cfg = camera(0, 50, 50);
  const FootprintPolygon fp = footprint({10, 20, 100, 1.1}, cfg);
  double cx = 0, cy = 0;
  for (const Point2& p : fp.corners) {
    cx += p.x / 4;
    cy += p.y / 4;
  }
  CHECK(cx == doctest::Approx(10.0));
  CHECK(cy == doctest::Approx(20.0));
}

TEST_CASE("footprint scales with altitude") {
  const SensorConfig cfg = camera(65, 40, 60);
  const FootprintShape a = footprint_shape(cfg, 100.0);
  const FootprintShape b = footprint_shape(cfg, 50.0);
  CHECK(b.near_forward == doctest::Approx(a.near_forward / 2));
  CHECK(b.far_half_width == doctest::Approx(a.far_half_width / 2));
}

TEST_CASE("cells in footprint") {
  const BeliefGrid grid = flat_grid(20, 20, 10.0, 0.5);
  SUBCASE("outside the grid") {
    const FootprintPolygon fp{{Point2{500, 500}, Point2{600, 500}, Point2{600, 600}, Point2{500, 600}}};
    CHECK(cells_in_footprint(fp, grid).empty());
  }
  SUBCASE("covering the grid") {
    const FootprintPolygon fp{{Point2{-5, -5}, Point2{205, -5}, Point2{205, 205}, Point2{-5, 205}}};
    CHECK(cells_in_footprint(fp, grid).size() == grid.size());
  }
  SUBCASE("random footprints match a full scan") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> pos(-50.0, 250.0);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> alt(10.0, 60.0);
    const SensorConfig cfg = camera(50, 40, 70);
    for (int i = 0; i < 200; ++i) {
      const FootprintPolygon fp = footprint({pos(rng), pos(rng), alt(rng), ang(rng)}, cfg);
      std::vector<std::size_t> expected;
      for (std::size_t c = 0; c < grid.size(); ++c)
        if (fp.contains(grid.cell_center(c))) expected.push_back(c);
      REQUIRE(cells_in_footprint(fp, grid) == expected);
    }
  }
}

TEST_CASE("transition distance") {
  // With nadir in view the footprint is a rectangle; L is its half-width.
  const SensorConfig down = camera(0, 40, 60);
  const FootprintShape rect = footprint_shape(down, 100.0);
  CHECK(rect.near_half_width == doctest::Approx(rect.far_half_width));
  CHECK(transition_distance(down, 100.0) == doctest::Approx(rect.near_half_width));
  CHECK(oracle::sliding_min_range(transition_distance(down, 100.0) - 0.5, down, 100.0, 0.01) ==
        doctest::Approx(std::hypot(transition_distance(down, 100.0) - 0.5, 100.0)).epsilon(1e-4));

  const SensorConfig tilted = camera(65, 40, 60);
  const FootprintPolygon fp = footprint({0, 0, 100, 0}, tilted);
  const double corner_half = std::abs(fp.corners[3].y - fp.corners[0].y) / 2;
  CHECK(transition_distance(tilted, 100.0) == doctest::Approx(corner_half));
  CHECK(transition_distance(tilted, 100.0) == doctest::Approx(81.65).epsilon(1e-4));

  CHECK(transition_distance(camera(65, 40, 1e-6), 100.0) < 1e-3);
  CHECK(transition_distance(camera(0, 40, 1e-6), 100.0) < 1e-3);
}

TEST_CASE("minimum range of a straight pass") {
  const SensorConfig tilted = camera(65, 40, 60);
  const SensorConfig nadir = camera(0, 40, 60);

  CHECK(min_range_to_edge(0.0, tilted, 100.0) == doctest::Approx(std::sqrt(2.0) * 100.0));
  CHECK(oracle::sliding_min_range(0.0, tilted, 100.0, 0.01) == doctest::Approx(141.42).epsilon(1e-3));

  CHECK(min_range_to_edge(30.0, nadir, 100.0) == doctest::Approx(std::hypot(30.0, 100.0)));
  CHECK(oracle::sliding_min_range(30.0, nadir, 100.0, 0.01) == doctest::Approx(104.40).epsilon(1e-3));

  const double beyond = transition_distance(tilted, 100.0) + 50.0;
  CHECK(min_range_to_edge(beyond, tilted, 100.0) ==
        doctest::Approx(oracle::sliding_min_range(beyond, tilted, 100.0, 0.01)).epsilon(1e-3));

  const double far_half = footprint_shape(tilted, 100.0).far_half_width;
  CHECK(std::isinf(min_range_to_edge(far_half + 1.0, tilted, 100.0)));
}

TEST_CASE("closed-form minimum range agrees with sliding poses") {
  const oracle::AgreementReport r = oracle::check_min_range(300, 29);
  CHECK(r.cases == 300);
  CHECK(r.failures == 0);
  CHECK(r.max_rel_error <= 0.01);
}

TEST_CASE("view placement") {
  const SensorConfig cfg = camera(65, 40, 60);
  const VehicleState s = place_for_view({1000, 1000}, 100.0, 0.0, cfg);
  CHECK(s.x == doctest::Approx(1000.0 - 100.0 * std::tan(deg_to_rad(55.0))));
  CHECK(s.x == doctest::Approx(857.19).epsilon(1e-5));
  CHECK(s.y == doctest::Approx(1000.0));
  CHECK(footprint(s, cfg).contains({1000, 1000}));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (int i = 0; i < 100; ++i) {
    const VehicleState v = place_for_view({0, 0}, 90.0, ang(rng), cfg);
    CHECK(footprint(v, cfg).contains({0, 0}));
  }
}

TEST_CASE("informed sampler") {
  const BeliefGrid grid = flat_grid(4, 4, 10.0, 0.5);
  const SensorConfig cfg = camera(65, 40, 60);
  std::mt19937_64 rng(37);

  SUBCASE("single positive cell") {
    std::vector<double> w(grid.size(), 0.0);
    w[5] = 2.0;
    const InformedSampler s(grid, w, cfg, {});
    for (int i = 0; i < 10000; ++i) REQUIRE(s.sample_cell(rng) == 5);
  }
  SUBCASE("weights 3:1") {
    std::vector<double> w(grid.size(), 0.0);
    w[2] = 3.0;
    w[9] = 1.0;
    const InformedSampler s(grid, w, cfg, {});
    std::size_t hits = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const std::size_t c = s.sample_cell(rng);
      REQUIRE((c == 2 || c == 9));
      hits += c == 2;
    }
    const double sigma = std::sqrt(n * 0.75 * 0.25);
    CHECK(std::abs(static_cast<double>(hits) - 0.75 * n) <= 3 * sigma);
    const std::vector<std::size_t> scaled{hits, 3 * (n - hits)};
    CHECK(chi_square_uniform_p(scaled) > 0.01);
  }
  SUBCASE("sampled states see their cell within the altitude range") {
    std::vector<double> w(grid.size(), 1.0);
    const AltitudeRange z{80.0, 120.0};
    const InformedSampler s(grid, w, cfg, z);
    for (int i = 0; i < 1000; ++i) {
      const VehicleState v = s.sample(rng);
      CHECK(v.z >= 80.0);
      CHECK(v.z <= 120.0);
    }
  }
  SUBCASE("bad weights") {
    CHECK_THROWS_AS(InformedSampler(grid, std::vector<double>(grid.size(), 0.0), cfg, {}), SamplingError);
    CHECK_THROWS_AS(InformedSampler(grid, std::vector<double>(3, 1.0), cfg, {}), std::invalid_argument);
    std::vector<double> neg(grid.size(), 1.0);
    neg[0] = -1.0;
    CHECK_THROWS_AS(InformedSampler(grid, neg, cfg, {}), std::invalid_argument);
  }
}
