#include "pumbo/point_set.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace pumbo {

Eigen::VectorXd AffineMap::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd u(x.size());
  for (Eigen::Index a = 0; a < x.size(); ++a)
    u[a] = scale[a] == 0.0 ? 0.5 : (x[a] - offset[a]) * scale[a];
  return u;
}

Eigen::VectorXd AffineMap::invert(const Eigen::VectorXd& u) const {
  Eigen::VectorXd x(u.size());
  for (Eigen::Index a = 0; a < u.size(); ++a)
    x[a] = scale[a] == 0.0 ? offset[a] : u[a] / scale[a] + offset[a];
  return x;
}

NormalizeResult normalize(const PointSet& raw) {
  if (raw.size() < 1) throw DataError("normalize: empty point set");
  if (!raw.points.allFinite())
    throw DataError("normalize: non-finite coordinate");

  const Eigen::Index d = raw.dim();
  NormalizeResult out;
  out.map.offset = raw.points.colwise().minCoeff().transpose();
  Eigen::VectorXd hi = raw.points.colwise().maxCoeff().transpose();
  out.map.scale.resize(d);

  out.ps = raw;
  for (Eigen::Index a = 0; a < d; ++a) {
    const double span = hi[a] - out.map.offset[a];
    if (span == 0.0) {
      out.map.scale[a] = 0.0;
      out.ps.points.col(a).setConstant(0.5);
      out.warnings.push_back("axis " + std::to_string(a) +
                             " is degenerate (max == min); mapped to 0.5");
    } else {
      out.map.scale[a] = 1.0 / span;
      out.ps.points.col(a) =
          (raw.points.col(a).array() - out.map.offset[a]) * out.map.scale[a];
    }
  }
  return out;
}

PointSet deduplicate(const PointSet& ps) {
  std::map<std::vector<double>, Eigen::Index> seen;
  std::vector<Eigen::Index> keep;
  const Eigen::Index d = ps.dim();
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    std::vector<double> key(d);
    for (Eigen::Index a = 0; a < d; ++a) key[a] = ps.points(i, a);
    auto [it, inserted] = seen.emplace(std::move(key), i);
    if (inserted) {
      keep.push_back(i);
    } else if (ps.has_values()) {
      const double prev = (*ps.values)[it->second];
      const double cur = (*ps.values)[i];
      if (std::abs(prev - cur) > 1e-12)
        throw DataError("duplicate point at rows " +
                        std::to_string(it->second + 1) + " and " +
                        std::to_string(i + 1) + " with conflicting values");
    }
  }
  if (keep.size() == static_cast<std::size_t>(ps.size())) return ps;

  PointSet out;
  out.points.resize(static_cast<Eigen::Index>(keep.size()), d);
  if (ps.has_values()) out.values = Eigen::VectorXd(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.points.row(static_cast<Eigen::Index>(k)) = ps.points.row(keep[k]);
    if (ps.has_values())
      (*out.values)[static_cast<Eigen::Index>(k)] = (*ps.values)[keep[k]];
  }
  return out;
}

}  // namespace pumbo
