#include <doctest.h>

#include <cmath>

#include "pumbo/layout.hpp"
#include "pumbo/rng.hpp"

using namespace pumbo;

namespace {

Eigen::MatrixXd random_points(Eigen::Index n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd pts(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) pts(i, a) = rng.next_double();
  return pts;
}

}  // namespace

TEST_CASE("N=2000 d=2 grid arithmetic") {
  // m_target = 500, n_side = round(sqrt(500)) = 22, m = 484
  auto layout = make_pu_centers(2000, 2);
  CHECK(layout.count() == 484);
  CHECK(layout.radii[0] == doctest::Approx(std::sqrt(2.0) / 44.0));
  CHECK(layout.centers(0, 0) == doctest::Approx(0.5 / 22.0));

  // Monte Carlo covering check with the initial radii
  Rng rng(11);
  for (int s = 0; s < 100000; ++s) {
    Eigen::Vector2d x{rng.next_double(), rng.next_double()};
    bool covered = false;
    for (Eigen::Index j = 0; j < layout.count() && !covered; ++j)
      covered = (layout.center(j) - x).norm() <= layout.radii[j];
    REQUIRE(covered);
  }
}

TEST_CASE("N=16000 d=2 grid arithmetic") {
  // m_target = 4000, n_side = round(sqrt(4000)) = 63, m = 3969
  auto layout = make_pu_centers(16000, 2);
  CHECK(layout.count() == 3969);
}

TEST_CASE("N=4 d=2 gives a single center covering the square") {
  auto layout = make_pu_centers(4, 2);
  REQUIRE(layout.count() == 1);
  CHECK(layout.centers(0, 0) == doctest::Approx(0.5));
  CHECK(layout.centers(0, 1) == doctest::Approx(0.5));
  CHECK(layout.radii[0] == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("N below 2^d is a configuration error") {
  CHECK_THROWS_AS(make_pu_centers(3, 2), ConfigError);
}

TEST_CASE("an initial ball that already qualifies is never grown") {
  auto pts = random_points(8000, 2, 3);
  PointSet ps{pts, std::nullopt};
  auto layout = make_pu_centers(8000, 2, /*min_pts=*/1);
  SpatialIndex idx(pts);
  auto radii = find_min_radius(ps, layout, idx);
  for (Eigen::Index j = 0; j < layout.count(); ++j) {
    if (idx.count_radius(layout.center(j), layout.radii[j]) >= 1)
      CHECK(radii[j] == layout.radii[j]);
    else
      CHECK(radii[j] > layout.radii[j]);
  }
}

TEST_CASE("grid data at full density needs no radius growth") {
  // 64 points on an 8x8 lattice of cell centers; every initial PU ball
  // (radius sqrt(2)/8) contains at least one lattice point
  Eigen::MatrixXd pts(64, 2);
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      pts(8 * i + k, 0) = (i + 0.5) / 8.0;
      pts(8 * i + k, 1) = (k + 0.5) / 8.0;
    }
  PointSet ps{pts, std::nullopt};
  auto layout = make_pu_centers(64, 2, /*min_pts=*/1);
  SpatialIndex idx(pts);
  auto radii = find_min_radius(ps, layout, idx);
  CHECK((radii - layout.radii).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("clustered data grows radii to the minimal progression value") {
  // all points near one corner
  Rng rng(9);
  Eigen::MatrixXd pts(64, 2);
  for (Eigen::Index i = 0; i < 64; ++i) {
    pts(i, 0) = 0.05 * rng.next_double();
    pts(i, 1) = 0.05 * rng.next_double();
  }
  PointSet ps{pts, std::nullopt};
  auto layout = make_pu_centers(64, 2, /*min_pts=*/15);
  SpatialIndex idx(pts);
  auto radii = find_min_radius(ps, layout, idx);

  const double r0 = layout.radii[0];
  const double step = r0 / 8.0;
  for (Eigen::Index j = 0; j < layout.count(); ++j) {
    CHECK(radii[j] >= r0);  // monotone over the start value
    // density holds at the returned radius
    CHECK(idx.count_radius(layout.center(j), radii[j]) >= 15);
    // and fails one step earlier unless we never grew
    if (radii[j] > r0) {
      CHECK(idx.count_radius(layout.center(j), radii[j] - step) < 15);
      // the radius sits on the arithmetic progression r0 + k*step
      const double k = (radii[j] - r0) / step;
      CHECK(std::abs(k - std::round(k)) < 1e-9);
    }
  }
}
