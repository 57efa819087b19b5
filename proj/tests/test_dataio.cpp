#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pumbo/dataio.hpp"

using namespace pumbo;

TEST_CASE("a three-row file with values loads as expected") {
  std::istringstream in("x1,x2,f\n0.1,0.2,1.5\n0.3,0.4,2.5\n0.5,0.6,3.5\n");
  auto ps = load_csv(in, "test");
  REQUIRE(ps.size() == 3);
  REQUIRE(ps.has_values());
  CHECK(ps.points(1, 0) == doctest::Approx(0.3));
  CHECK((*ps.values)[2] == doctest::Approx(3.5));
}

TEST_CASE("CRLF line endings are accepted") {
  std::istringstream in("x1,x2,f\r\n0.1,0.2,1.0\r\n");
  auto ps = load_csv(in, "test");
  CHECK(ps.size() == 1);
}

TEST_CASE("a non-numeric cell names its line") {
  std::istringstream in("x1,x2,f\n0.1,0.2,1.0\n0.3,oops,2.0\n");
  try {
    load_csv(in, "test");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("ragged rows and missing header are rejected") {
  std::istringstream ragged("x1,x2,f\n0.1,0.2\n");
  CHECK_THROWS_AS(load_csv(ragged, "test"), DataError);
  std::istringstream bad_header("a,b,f\n0.1,0.2,1.0\n");
  CHECK_THROWS_AS(load_csv(bad_header, "test"), DataError);
}

TEST_CASE("conflicting duplicate rows are rejected, equal ones merged") {
  std::istringstream equal("x1,x2,f\n0.1,0.2,1.0\n0.1,0.2,1.0\n");
  CHECK(load_csv(equal, "test").size() == 1);
  std::istringstream conflict("x1,x2,f\n0.1,0.2,1.0\n0.1,0.2,2.0\n");
  CHECK_THROWS_AS(load_csv(conflict, "test"), DataError);
}

TEST_CASE("save/load round trip is bit exact") {
  auto ps = gen_testdata("f1", 200, 99);
  std::ostringstream out;
  save_csv(ps, out);
  std::istringstream in(out.str());
  auto back = load_csv(in, "roundtrip");
  REQUIRE(back.size() == ps.size());
  CHECK((back.points - ps.points).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((*back.values - *ps.values).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("f2 vanishes on the x2 = 0 line") {
  for (double x : {0.0, 0.17, 0.5, 0.93}) CHECK(trig_f2(x, 0.0) == 0.0);
}

TEST_CASE("f2 point value") {
  // 2 cos(1) sin(2) + sin(0.2)
  CHECK(trig_f2(0.1, 0.2) == doctest::Approx(1.1812603236628249).epsilon(1e-12));
}

TEST_CASE("f1 point value at the center") {
  // frozen from an independent high-precision evaluation of the four terms
  CHECK(franke_f1(0.5, 0.5) == doctest::Approx(0.47326290213707825).epsilon(1e-12));
}

TEST_CASE("gen_testdata is seeded and inside the unit square") {
  auto a = gen_testdata("f2", 100, 5);
  auto b = gen_testdata("f2", 100, 5);
  CHECK((a.points - b.points).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(a.points.minCoeff() >= 0.0);
  CHECK(a.points.maxCoeff() < 1.0);
  for (Eigen::Index i = 0; i < 100; ++i)
    CHECK((*a.values)[i] == trig_f2(a.points(i, 0), a.points(i, 1)));
  CHECK_THROWS_AS(gen_testdata("f3", 10, 0), ConfigError);
}

TEST_CASE("split_points partitions without repetition") {
  auto ps = gen_testdata("f1", 8113, 7);
  auto [train, test] = split_points(ps, 1113, 8);
  CHECK(train.size() == 7000);
  CHECK(test.size() == 1113);
  // values travel with their points
  for (Eigen::Index i = 0; i < 20; ++i)
    CHECK((*test.values)[i] ==
          franke_f1(test.points(i, 0), test.points(i, 1)));
}
