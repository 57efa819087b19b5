#include <doctest.h>

#include "pumbo/point_set.hpp"

using namespace pumbo;

TEST_CASE("normalize maps a two-point bounding box onto the unit square") {
  PointSet raw;
  raw.points.resize(2, 2);
  raw.points << 0, 0, 2, 4;
  auto res = normalize(raw);
  CHECK(res.ps.points(0, 0) == doctest::Approx(0.0));
  CHECK(res.ps.points(0, 1) == doctest::Approx(0.0));
  CHECK(res.ps.points(1, 0) == doctest::Approx(1.0));
  CHECK(res.ps.points(1, 1) == doctest::Approx(1.0));
  CHECK(res.map.scale[0] == doctest::Approx(0.5));
  CHECK(res.map.scale[1] == doctest::Approx(0.25));
  CHECK(res.warnings.empty());
}

TEST_CASE("normalize is the identity on data already spanning [0,1]") {
  PointSet raw;
  raw.points.resize(3, 2);
  raw.points << 0, 0, 0.5, 0.25, 1, 1;
  auto res = normalize(raw);
  CHECK((res.ps.points - raw.points).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("normalize output spans exactly [0,1] per axis") {
  PointSet raw;
  raw.points.resize(50, 3);
  for (int i = 0; i < 50; ++i) {
    raw.points(i, 0) = -175.0 + 0.3 * i;    // lon-like
    raw.points(i, 1) = -23.0 + 0.11 * i;    // lat-like
    raw.points(i, 2) = -8000.0 + 90.0 * i;  // depth-like
  }
  auto res = normalize(raw);
  for (int a = 0; a < 3; ++a) {
    CHECK(res.ps.points.col(a).minCoeff() == doctest::Approx(0.0));
    CHECK(res.ps.points.col(a).maxCoeff() == doctest::Approx(1.0));
  }
  // round trip through the map
  Eigen::VectorXd back = res.map.invert(res.ps.point(7));
  CHECK(back.isApprox(raw.point(7), 1e-12));
}

TEST_CASE("degenerate axis collapses to 0.5 with a warning") {
  PointSet raw;
  raw.points.resize(3, 2);
  raw.points << 1, 5, 2, 5, 3, 5;
  auto res = normalize(raw);
  CHECK(res.warnings.size() == 1);
  CHECK(res.ps.points.col(1).isConstant(0.5));
}

TEST_CASE("deduplicate keeps agreeing duplicates, rejects conflicts") {
  PointSet ps;
  ps.points.resize(3, 2);
  ps.points << 0.1, 0.2, 0.1, 0.2, 0.3, 0.4;
  ps.values = Eigen::Vector3d{1.0, 1.0, 2.0};
  PointSet out = deduplicate(ps);
  CHECK(out.size() == 2);

  (*ps.values)[1] = 1.5;
  CHECK_THROWS_AS(deduplicate(ps), DataError);
}
