#include "pumbo/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "pumbo/errors.hpp"

namespace pumbo {

namespace {

constexpr double kZeroTruth = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

double mae(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred) {
  if (truth.size() != pred.size() || truth.size() < 1)
    throw DataError("mae: length mismatch or empty");
  return (pred - truth).lpNorm<Eigen::Infinity>();
}

RelativeMetric rmae(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred) {
  if (truth.size() != pred.size())
    throw DataError("rmae: length mismatch");
  double worst = 0.0;
  std::size_t excluded = 0, included = 0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (std::abs(truth[i]) < kZeroTruth) {
      ++excluded;
      continue;
    }
    ++included;
    worst = std::max(worst, std::abs(pred[i] - truth[i]) / std::abs(truth[i]));
  }
  if (included == 0)
    throw ConfigError("rmae: every index excluded by the zero-truth guard");
  return {worst, excluded};
}

RelativeMetric rrmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred) {
  if (truth.size() != pred.size())
    throw DataError("rrmse: length mismatch");
  double sum = 0.0;
  std::size_t excluded = 0, included = 0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (std::abs(truth[i]) < kZeroTruth) {
      ++excluded;
      continue;
    }
    ++included;
    const double rel = (pred[i] - truth[i]) / truth[i];
    sum += rel * rel;
  }
  if (included == 0)
    throw ConfigError("rrmse: every index excluded by the zero-truth guard");
  return {std::sqrt(sum / static_cast<double>(included)), excluded};
}

unsigned resolve_thread_count() {
  if (const char* env = std::getenv("PUMBO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

FitResult bo_pum(const PointSet& train, const Eigen::MatrixXd& eval_points,
                 const BoConfig& cfg, const std::optional<Eigen::VectorXd>& truth,
                 unsigned n_threads) {
  cfg.validate();
  if (!train.has_values()) throw DataError("bo_pum: training set has no values");
  if (train.size() < 1) throw ConfigError("bo_pum: empty training set");
  if (train.size() < cfg.min_pts)
    throw ConfigError("bo_pum: fewer points than min_pts");
  if (truth && truth->size() != eval_points.rows())
    throw DataError("bo_pum: truth length != eval point count");

  FitResult result;
  const int dim = static_cast<int>(train.dim());

  SubdomainLayout layout = make_pu_centers(train.size(), dim, cfg.min_pts);
  SpatialIndex idx(train.points);

  auto t0 = Clock::now();
  const Eigen::VectorXd delta_start = find_min_radius(train, layout, idx);
  result.timings.radius_search_s = seconds_since(t0);

  const Eigen::Index m = layout.count();
  layout.radii = delta_start;
  result.traces.resize(m);

  t0 = Clock::now();
  Eigen::VectorXd tuned_eps(m), tuned_delta(m);
  auto run_bo = [&](Eigen::Index j) {
    BoResult r = bo_search(train, layout.center(j), delta_start[j], cfg, idx,
                           static_cast<std::size_t>(j));
    tuned_eps[j] = r.best_theta[0];
    tuned_delta[j] = r.best_theta[1];
    result.traces[static_cast<std::size_t>(j)] = std::move(r.trace);
  };

  if (n_threads <= 1 || m < 2) {
    for (Eigen::Index j = 0; j < m; ++j) run_bo(j);
  } else {
    std::atomic<Eigen::Index> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const Eigen::Index j = next.fetch_add(1);
          if (j >= m) return;
          try {
            run_bo(j);
          } catch (...) {
            std::lock_guard<std::mutex> lk(err_mutex);
            if (!err) err = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }
  result.timings.bo_total_s = seconds_since(t0);

  layout.shapes = tuned_eps;
  layout.radii = tuned_delta;
  result.layout = layout;

  t0 = Clock::now();
  PumDiagnostics diag;
  result.predictions =
      pum_evaluate(train, eval_points, layout, idx, cfg.family, &diag, n_threads);
  result.timings.blend_s = seconds_since(t0);
  result.uncovered = diag.uncovered;
  result.max_jitter = diag.max_jitter;
  result.nonzero_jitter_fits = diag.nonzero_jitter_fits;

  if (truth) {
    Metrics metrics;
    metrics.mae = mae(*truth, result.predictions);
    try {
      const auto rm = rmae(*truth, result.predictions);
      const auto rr = rrmse(*truth, result.predictions);
      metrics.rmae = rm.value;
      metrics.rrmse = rr.value;
      metrics.excluded = rm.excluded;
    } catch (const ConfigError&) {
      // all-zero truth: relative metrics stay unset
    }
    result.metrics = metrics;
  }
  return result;
}

}  // namespace pumbo
