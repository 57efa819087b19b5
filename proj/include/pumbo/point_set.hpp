#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "pumbo/errors.hpp"

namespace pumbo {

// Per-axis affine map x -> (x - offset) * scale used by normalize().
// invert() recovers original coordinates.
struct AffineMap {
  Eigen::VectorXd offset;  // per-axis min of the raw data
  Eigen::VectorXd scale;   // 1 / (max - min), or 0 for degenerate axes

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd invert(const Eigen::VectorXd& u) const;
};

// Dataset container: N points of dimension d, optionally with scalar values.
struct PointSet {
  Eigen::MatrixXd points;                 // N x d
  std::optional<Eigen::VectorXd> values;  // length N when present

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
  bool has_values() const { return values.has_value(); }

  Eigen::VectorXd point(Eigen::Index i) const { return points.row(i).transpose(); }
};

struct NormalizeResult {
  PointSet ps;
  AffineMap map;
  std::vector<std::string> warnings;  // one entry per degenerate axis
};

// Rescales raw coordinates into [0,1]^d per axis; degenerate axes (max == min)
// collapse to 0.5 with a warning.
NormalizeResult normalize(const PointSet& raw);

// Removes duplicate points whose values agree within 1e-12; throws DataError
// when duplicates carry conflicting values. Points without values are
// deduplicated unconditionally.
PointSet deduplicate(const PointSet& ps);

}  // namespace pumbo
