#pragma once

#include <Eigen/Dense>

#include "pumbo/kdtree.hpp"
#include "pumbo/point_set.hpp"

namespace pumbo {

// Overlapping-ball covering of [0,1]^d: grid centers, per-ball radii delta
// and shape parameters epsilon.
struct SubdomainLayout {
  Eigen::MatrixXd centers;  // m x d, cell centers of an n_side^d grid
  Eigen::VectorXd radii;    // delta_j
  Eigen::VectorXd shapes;   // epsilon_j (0 until tuned)
  int min_pts = 15;

  Eigen::Index count() const { return centers.rows(); }
  Eigen::VectorXd center(Eigen::Index j) const {
    return centers.row(j).transpose();
  }
};

// Half cell diagonal of an n_side^d grid on the unit cube; doubles as the
// initial covering radius.
double initial_radius(int n_side, int dim);

// Builds the PU center grid for N data points in dimension d. The target
// count floor(N / 2^d) is rounded to the nearest d-th power so the centers
// form a regular grid; all radii start at the half cell diagonal.
// Throws ConfigError when N < 2^d.
SubdomainLayout make_pu_centers(Eigen::Index n_points, int dim,
                                int min_pts = 15);

// Grows each radius in steps of 1/8 of the initial radius until the ball
// holds at least layout.min_pts data points. Radii never shrink.
Eigen::VectorXd find_min_radius(const PointSet& ps,
                                const SubdomainLayout& layout,
                                const SpatialIndex& idx);

}  // namespace pumbo
