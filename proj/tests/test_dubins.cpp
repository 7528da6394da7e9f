#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "tigris/dubins.hpp"
#include "tigris/oracle.hpp"

using namespace tigris;

namespace {

bool same_pose(const VehicleState& a, const VehicleState& b, double tol) {
  const double dpsi = std::remainder(a.psi - b.psi, kTwoPi);
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol &&
         std::abs(dpsi) <= tol;
}

VehicleState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-800.0, 800.0);
  std::uniform_real_distribution<double> alt(80.0, 120.0);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  return {pos(rng), pos(rng), alt(rng), ang(rng)};
}

}  // namespace

TEST_CASE("identical poses give an empty path") {
  const VehicleState s{0, 0, 100, 0};
  CHECK(connect(s, s, 60.0).total_length == doctest::Approx(0.0));
}

TEST_CASE("aligned collinear poses give one straight segment") {
  const PathEdge e = connect({0, 0, 100, 0}, {500, 0, 100, 0}, 60.0);
  CHECK(e.total_length == doctest::Approx(500.0));
  double turning = 0.0;
  for (const Segment& seg : e.segments)
    if (seg.kind != SegmentKind::Straight) turning += seg.length;
  CHECK(turning == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("u-turn in place matches the brute-force search") {
  const VehicleState from{0, 0, 100, 0};
  const VehicleState to{0, 0, 100, kPi};
  const double expected = oracle::dubins_length(from, to, 60.0);
  REQUIRE(expected > 0.0);
  CHECK(connect(from, to, 60.0).total_length == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("closed forms agree with the brute-force search on random pose pairs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    const VehicleState a = random_state(rng);
    const VehicleState b = random_state(rng);
    const double expected = oracle::dubins_length(a, b, 60.0, 20000);
    REQUIRE(expected > 0.0);
    CHECK(connect(a, b, 60.0).total_length == doctest::Approx(expected).epsilon(1e-6));
    for (DubinsWord w : {DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR, DubinsWord::RSL}) {
      const double closed = dubins_word_length(w, a, b, 60.0);
      const double brute = oracle::dubins_word_length(w, a, b, 60.0, 20000);
      CHECK((closed < 0.0) == (brute < 0.0));
      if (closed >= 0.0 && brute >= 0.0) CHECK(closed == doctest::Approx(brute).epsilon(1e-6));
    }
  }
}

TEST_CASE("path ends at the goal pose with linear altitude") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const VehicleState a = random_state(rng);
    const VehicleState b = random_state(rng);
    const PathEdge e = connect(a, b, 60.0);
    CHECK(same_pose(pose_at(e, e.total_length), b, 1e-6));
    CHECK(pose_at(e, 0.5 * e.total_length).z == doctest::Approx(0.5 * (a.z + b.z)));
  }
}

TEST_CASE("length never beats the straight-line distance") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const VehicleState a = random_state(rng);
    const VehicleState b = random_state(rng);
    const double euclid = std::hypot(b.x - a.x, b.y - a.y);
    REQUIRE(connect(a, b, 60.0).total_length >= euclid - 1e-9);
  }
}

TEST_CASE("consecutive samples along a path are 1-Lipschitz in the plane") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const PathEdge e = connect(random_state(rng), random_state(rng), 60.0);
    VehicleState prev = pose_at(e, 0.0);
    for (double s = 1.0; s <= e.total_length; s += 1.0) {
      const VehicleState cur = pose_at(e, s);
      REQUIRE(std::hypot(cur.x - prev.x, cur.y - prev.y) <= 1.0 + 1e-9);
      prev = cur;
    }
  }
}

TEST_CASE("truncation") {
  const PathEdge straight = connect({0, 0, 100, 0}, {500, 0, 120, 0}, 60.0);

  SUBCASE("at zero") {
    const PathEdge t = truncate(straight, 0.0);
    CHECK(t.total_length == 0.0);
    CHECK(same_pose(t.end, straight.start, 1e-12));
  }
  SUBCASE("at full length") {
    const PathEdge t = truncate(straight, straight.total_length);
    CHECK(same_pose(t.end, straight.end, 1e-6));
  }
  SUBCASE("partway along a straight") {
    const PathEdge t = truncate(straight, 123.4);
    CHECK(t.total_length == doctest::Approx(123.4));
    CHECK(same_pose(t.end, {123.4, 0, 100 + 20 * 123.4 / 500, 0}, 1e-6));
  }
  SUBCASE("prefix of a random path keeps its poses") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
      const PathEdge e = connect(random_state(rng), random_state(rng), 60.0);
      const double s = std::uniform_real_distribution<double>(0.0, e.total_length)(rng);
      const PathEdge t = truncate(e, s);
      CHECK(std::abs(t.total_length - s) <= 1e-6);
      CHECK(same_pose(t.end, pose_at(e, s), 1e-6));
      CHECK(same_pose(pose_at(t, 0.5 * s), pose_at(e, 0.5 * s), 1e-6));
    }
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(truncate(straight, -1.0), std::out_of_range);
    CHECK_THROWS_AS(truncate(straight, 501.0), std::out_of_range);
    CHECK_THROWS_AS(pose_at(straight, 600.0), std::out_of_range);
  }
}

TEST_CASE("quarter of a left turn faces north") {
  const PathEdge e = connect({0, 0, 100, 0}, {0, 120, 100, kPi}, 60.0);
  REQUIRE(e.segments.front().kind == SegmentKind::Left);
  const VehicleState q = pose_at(e, kPi * 30.0);
  CHECK(q.psi == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(q.x == doctest::Approx(60.0));
  CHECK(q.y == doctest::Approx(60.0));
}

TEST_CASE("nonpositive radius is rejected") {
  CHECK_THROWS_AS(connect({0, 0, 100, 0}, {10, 0, 100, 0}, 0.0), std::invalid_argument);
}
