#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pumbo/point_set.hpp"
#include "pumbo/rng.hpp"

namespace pumbo {

// CSV schema: header "x1,...,xd[,f]", decimal-point floats, LF or CRLF.
// Duplicate rows with equal values are deduplicated; conflicting duplicates
// and malformed cells throw DataError with a line number.
PointSet load_csv(const std::string& path);
PointSet load_csv(std::istream& in, const std::string& name);

// Writes the same schema with 17 significant digits (round-trip exact).
void save_csv(const PointSet& ps, const std::string& path);
void save_csv(const PointSet& ps, std::ostream& out);

// Franke's four-exponential test surface.
double franke_f1(double x1, double x2);
// 2 cos(10 x1) sin(10 x2) + sin(10 x1 x2).
double trig_f2(double x1, double x2);

// N seeded uniform points in [0,1]^2 with exact values of f1 or f2.
PointSet gen_testdata(const std::string& fn_id, Eigen::Index n,
                      std::uint64_t seed);

// Seeded split into (train, test) of sizes (n - n_test, n_test) without
// replacement.
std::pair<PointSet, PointSet> split_points(const PointSet& ps,
                                           Eigen::Index n_test,
                                           std::uint64_t seed);

}  // namespace pumbo
