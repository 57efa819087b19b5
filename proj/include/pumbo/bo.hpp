#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pumbo/gp.hpp"
#include "pumbo/kdtree.hpp"
#include "pumbo/kernels.hpp"
#include "pumbo/point_set.hpp"
#include "pumbo/rng.hpp"

namespace pumbo {

struct BoConfig {
  double eps_max = 20.0;
  int nstart = 5;
  int niter = 25;
  double xi = 0.15;
  double tau = 1e-4;
  int n_candidates = 2048;
  double split_fraction = 0.2;
  int min_pts = 15;
  std::uint64_t seed = 0;
  KernelFamily family = KernelFamily::Gaussian;

  void validate() const;
};

enum class TrialStatus { Ok, IllConditioned, DegenerateSplit };

struct BoTrace {
  Eigen::MatrixXd thetas;            // n x 2 evaluated parameters
  Eigen::VectorXd objectives;        // g = -validation MAE (-inf for failures)
  std::vector<TrialStatus> status;
  Eigen::Index best = -1;            // argmax over ok trials

  Eigen::Index size() const { return thetas.rows(); }
};

// Closed-form Expected Improvement with exploration trade-off xi:
//   EI = (mu - best - xi) Phi(Z) + sigma phi(Z),  Z = (mu - best - xi)/sigma
// and EI = 0 when sigma = 0.
double expected_improvement(double mean, double std, double best, double xi);

// Draws cfg.n_candidates uniform points in the box and returns the one with
// maximal EI; ties break toward the lowest candidate index.
Eigen::Vector2d propose_next(const GpModel& model, const SearchBox& box,
                             double best, const BoConfig& cfg, Rng& rng);

struct BoResult {
  Eigen::Vector2d best_theta;  // (epsilon, delta)
  BoTrace trace;
};

// Per-subdomain BO loop: nstart random trials, then EI proposals, each
// evaluated as the negative validation MAE of a local RBF fit on a fixed
// seeded train/validation split. Stops at MAE <= tau or budget exhaustion.
// Throws SubdomainSearchFailed when no trial succeeds.
BoResult bo_search(const PointSet& ps, const Eigen::VectorXd& center,
                   double delta_start, const BoConfig& cfg,
                   const SpatialIndex& idx, std::size_t subdomain_id = 0);

}  // namespace pumbo
