#include <doctest.h>

#include <algorithm>
#include <vector>

#include "pumbo/kdtree.hpp"
#include "pumbo/rng.hpp"

using namespace pumbo;

namespace {

// brute-force oracle for closed-ball queries
std::vector<std::size_t> scan_ball(const Eigen::MatrixXd& pts,
                                   const Eigen::VectorXd& c, double r) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    if ((pts.row(i).transpose() - c).norm() <= r)
      out.push_back(static_cast<std::size_t>(i));
  return out;
}

Eigen::MatrixXd random_points(Eigen::Index n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd pts(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) pts(i, a) = rng.next_double();
  return pts;
}

}  // namespace

TEST_CASE("single point tree answers the r=0 self query") {
  Eigen::MatrixXd pts(1, 2);
  pts << 0.3, 0.7;
  SpatialIndex idx(pts);
  auto hit = idx.query_radius(pts.row(0).transpose(), 0.0);
  REQUIRE(hit.size() == 1);
  CHECK(hit[0] == 0);
}

TEST_CASE("radius sqrt(d) covers the whole unit cube") {
  auto pts = random_points(200, 3, 5);
  SpatialIndex idx(pts);
  Eigen::VectorXd c = Eigen::VectorXd::Constant(3, 0.5);
  CHECK(idx.query_radius(c, std::sqrt(3.0)).size() == 200);
}

TEST_CASE("duplicate points are both returned") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0.5, 0.5, 0.5, 0.5, 0.9, 0.9;
  SpatialIndex idx(pts);
  auto hit = idx.query_radius(Eigen::Vector2d{0.5, 0.5}, 0.0);
  CHECK(hit == std::vector<std::size_t>{0, 1});
}

TEST_CASE("random queries match the linear scan exactly") {
  auto pts = random_points(1000, 2, 42);
  SpatialIndex idx(pts);
  Rng rng(43);
  for (int q = 0; q < 50; ++q) {
    Eigen::Vector2d c{rng.next_double(), rng.next_double()};
    const double r = rng.next_double() * 0.5;
    auto got = idx.query_radius(c, r);
    auto want = scan_ball(pts, c, r);
    CHECK(got == want);
    CHECK(idx.count_radius(c, r) == want.size());
  }
}

TEST_CASE("negative radius is rejected") {
  auto pts = random_points(10, 2, 1);
  SpatialIndex idx(pts);
  CHECK_THROWS(idx.query_radius(Eigen::Vector2d{0, 0}, -1.0));
}

TEST_CASE("nearest matches a linear argmin") {
  auto pts = random_points(500, 2, 7);
  SpatialIndex idx(pts);
  Rng rng(8);
  for (int q = 0; q < 30; ++q) {
    Eigen::Vector2d t{rng.next_double(), rng.next_double()};
    std::size_t got = idx.nearest(t);
    Eigen::Index want;
    (pts.rowwise() - t.transpose()).rowwise().norm().minCoeff(&want);
    CHECK(got == static_cast<std::size_t>(want));
  }
}
