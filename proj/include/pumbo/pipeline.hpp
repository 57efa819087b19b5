#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pumbo/bo.hpp"
#include "pumbo/layout.hpp"
#include "pumbo/point_set.hpp"
#include "pumbo/shepard.hpp"

namespace pumbo {

struct Metrics {
  double mae = 0.0;
  std::optional<double> rmae;
  std::optional<double> rrmse;
  std::size_t excluded = 0;  // |truth| < 1e-12 indices skipped by RMAE/RRMSE
};

struct PhaseTimings {
  double radius_search_s = 0.0;
  double bo_total_s = 0.0;
  double blend_s = 0.0;
};

struct FitResult {
  SubdomainLayout layout;  // tuned (epsilon_j, delta_j)
  Eigen::VectorXd predictions;
  std::optional<Metrics> metrics;  // present iff truth supplied
  std::vector<BoTrace> traces;
  PhaseTimings timings;
  std::vector<std::size_t> uncovered;
  double max_jitter = 0.0;               // largest jitter any final fit used
  std::size_t nonzero_jitter_fits = 0;
};

// max_i |pred_i - truth_i|
double mae(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred);

struct RelativeMetric {
  double value;
  std::size_t excluded;
};

// max_i |pred_i - truth_i| / |truth_i| over indices with |truth_i| >= 1e-12.
// Throws ConfigError when every index is excluded.
RelativeMetric rmae(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred);

// sqrt(mean of ((pred - truth)/truth)^2) over the same included indices.
RelativeMetric rrmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred);

// Full pipeline: centers, kd-tree, minimum-density radii, per-subdomain BO,
// final PUM blend on eval_points. `truth` enables the error metrics.
// Deterministic for a fixed cfg.seed, independent of n_threads.
FitResult bo_pum(const PointSet& train, const Eigen::MatrixXd& eval_points,
                 const BoConfig& cfg,
                 const std::optional<Eigen::VectorXd>& truth = std::nullopt,
                 unsigned n_threads = 1);

// Worker count: PUMBO_THREADS when set, else hardware concurrency.
unsigned resolve_thread_count();

}  // namespace pumbo
