#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "pumbo/kdtree.hpp"
#include "pumbo/kernels.hpp"
#include "pumbo/layout.hpp"
#include "pumbo/point_set.hpp"

namespace pumbo {

// Sparse partition-of-unity weights: per evaluation point, the covering
// subdomains and their normalized Shepard weights.
struct WeightField {
  struct Entry {
    std::size_t subdomain;
    double weight;
  };
  std::vector<std::vector<Entry>> per_point;
  std::vector<std::size_t> uncovered;  // points with no covering ball
};

// Wendland C2 bump (1 - s)_+^4 (4 s + 1) with s = ||x - c_j|| / delta_j,
// normalized over the covering subdomains.
WeightField shepard_weights(const Eigen::MatrixXd& targets,
                            const SubdomainLayout& layout);

struct PumDiagnostics {
  std::vector<std::size_t> uncovered;     // targets served by nearest-center fallback
  std::vector<std::size_t> clamped;       // targets clamped into [0,1]^d
  double max_jitter = 0.0;                // largest jitter any local fit used
  std::size_t nonzero_jitter_fits = 0;
};

// Algorithm: fit a local interpolant per subdomain on its data points and
// accumulate weight * prediction over the covered targets. Uncovered targets
// fall back to the nearest center's local model with weight 1.
// Accumulation order is by subdomain index regardless of threading.
Eigen::VectorXd pum_evaluate(const PointSet& ps, const Eigen::MatrixXd& targets,
                             const SubdomainLayout& layout,
                             const SpatialIndex& idx, KernelFamily family,
                             PumDiagnostics* diag = nullptr,
                             unsigned n_threads = 1);

}  // namespace pumbo
