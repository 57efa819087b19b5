#include "pumbo/layout.hpp"

#include <cmath>

#include "pumbo/errors.hpp"

namespace pumbo {

double initial_radius(int n_side, int dim) {
  return std::sqrt(static_cast<double>(dim)) / (2.0 * n_side);
}

SubdomainLayout make_pu_centers(Eigen::Index n_points, int dim, int min_pts) {
  const double pow2d = std::ldexp(1.0, dim);
  if (static_cast<double>(n_points) < pow2d)
    throw ConfigError("make_pu_centers: need at least 2^d points, got " +
                      std::to_string(n_points));

  const auto m_target =
      static_cast<Eigen::Index>(std::floor(static_cast<double>(n_points) / pow2d));
  int n_side = static_cast<int>(
      std::llround(std::pow(static_cast<double>(m_target), 1.0 / dim)));
  if (n_side < 1) n_side = 1;

  Eigen::Index m = 1;
  for (int a = 0; a < dim; ++a) m *= n_side;

  SubdomainLayout layout;
  layout.min_pts = min_pts;
  layout.centers.resize(m, dim);
  // cell centers of the n_side^d grid, row-major over axes
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::Index rem = j;
    for (int a = dim - 1; a >= 0; --a) {
      const Eigen::Index cell = rem % n_side;
      rem /= n_side;
      layout.centers(j, a) = (static_cast<double>(cell) + 0.5) / n_side;
    }
  }
  layout.radii = Eigen::VectorXd::Constant(m, initial_radius(n_side, dim));
  layout.shapes = Eigen::VectorXd::Zero(m);
  return layout;
}

Eigen::VectorXd find_min_radius(const PointSet& ps,
                                const SubdomainLayout& layout,
                                const SpatialIndex& idx) {
  if (layout.min_pts < 1)
    throw ConfigError("find_min_radius: min_pts must be >= 1");
  if (ps.size() < layout.min_pts)
    throw ConfigError("find_min_radius: fewer points than min_pts");

  const double r0 = layout.radii.minCoeff();
  const double step = r0 / 8.0;
  const double cap = std::sqrt(static_cast<double>(ps.dim()));
  const auto want = static_cast<std::size_t>(layout.min_pts);

  Eigen::VectorXd radii = layout.radii;
  for (Eigen::Index j = 0; j < layout.count(); ++j) {
    const Eigen::VectorXd c = layout.center(j);
    while (idx.count_radius(c, radii[j]) < want) {
      if (radii[j] > cap)
        throw ConfigError("find_min_radius: radius cap exceeded");
      radii[j] += step;
    }
  }
  return radii;
}

}  // namespace pumbo
