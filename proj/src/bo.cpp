#include "pumbo/bo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pumbo/errors.hpp"
#include "pumbo/local_solver.hpp"

namespace pumbo {

void BoConfig::validate() const {
  if (nstart < 1) throw ConfigError("BoConfig: nstart must be >= 1");
  if (niter < 0) throw ConfigError("BoConfig: niter must be >= 0");
  if (eps_max <= 0.0) throw ConfigError("BoConfig: eps_max must be > 0");
  if (xi < 0.0) throw ConfigError("BoConfig: xi must be >= 0");
  if (tau < 0.0) throw ConfigError("BoConfig: tau must be >= 0");
  if (split_fraction <= 0.0 || split_fraction >= 1.0)
    throw ConfigError("BoConfig: split_fraction must lie in (0, 1)");
  if (n_candidates < 1) throw ConfigError("BoConfig: n_candidates must be >= 1");
  if (min_pts < 1) throw ConfigError("BoConfig: min_pts must be >= 1");
}

namespace {

constexpr double kEpsFloor = 1e-6;  // open interval at 0 for epsilon

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double expected_improvement(double mean, double std, double best, double xi) {
  if (std < 0.0) throw std::invalid_argument("expected_improvement: std < 0");
  if (std == 0.0) return 0.0;
  const double delta = mean - best - xi;
  const double z = delta / std;
  return std::max(0.0, delta * normal_cdf(z) + std * normal_pdf(z));
}

Eigen::Vector2d propose_next(const GpModel& model, const SearchBox& box,
                             double best, const BoConfig& cfg, Rng& rng) {
  Eigen::Vector2d champion{box.eps_lo, box.delta_lo};
  double champion_ei = -1.0;
  for (int c = 0; c < cfg.n_candidates; ++c) {
    Eigen::Vector2d theta{rng.uniform(box.eps_lo, box.eps_hi),
                          rng.uniform(box.delta_lo, box.delta_hi)};
    const auto [mu, sigma] = model.predict(theta);
    const double ei = expected_improvement(mu, sigma, best, cfg.xi);
    // strict > keeps the lowest candidate index on ties
    if (ei > champion_ei) {
      champion_ei = ei;
      champion = theta;
    }
  }
  return champion;
}

BoResult bo_search(const PointSet& ps, const Eigen::VectorXd& center,
                   double delta_start, const BoConfig& cfg,
                   const SpatialIndex& idx, std::size_t subdomain_id) {
  cfg.validate();
  if (!ps.has_values()) throw DataError("bo_search: point set has no values");

  const SearchBox box{kEpsFloor, cfg.eps_max, delta_start, 2.0 * delta_start};
  Rng rng = Rng::stream(cfg.seed, subdomain_id);

  // Fixed per-subdomain random scores over the largest possible ball; each
  // trial takes the lowest-score split_fraction of its fetched subset as
  // validation. Scores stay put across trials, so objective values remain
  // comparable between different radii, and the split is an exact-ratio
  // partition (never starved of validation points).
  Rng label_rng = Rng::stream(cfg.seed ^ 0x5d3f0c1a2b4e6d78ULL, subdomain_id);
  const auto max_ball = idx.query_radius(center, box.delta_hi);
  std::vector<double> score(ps.size(), 2.0);
  for (std::size_t i : max_ball) score[i] = label_rng.next_double();

  const int budget = cfg.nstart + cfg.niter;
  std::vector<Eigen::Vector2d> thetas;
  std::vector<double> objectives;
  std::vector<TrialStatus> status;
  thetas.reserve(budget);

  const double neg_inf = -std::numeric_limits<double>::infinity();

  auto ok_count = [&] {
    return std::count(status.begin(), status.end(), TrialStatus::Ok);
  };
  auto best_objective = [&] {
    double best = neg_inf;
    for (std::size_t t = 0; t < objectives.size(); ++t)
      if (status[t] == TrialStatus::Ok) best = std::max(best, objectives[t]);
    return best;
  };

  for (int i = 1; i <= budget; ++i) {
    Eigen::Vector2d theta;
    if (i <= cfg.nstart || ok_count() == 0) {
      theta = {rng.uniform(box.eps_lo, box.eps_hi),
               rng.uniform(box.delta_lo, box.delta_hi)};
    } else {
      const auto n_ok = ok_count();
      Eigen::MatrixXd obs(n_ok, 2);
      Eigen::VectorXd vals(n_ok);
      Eigen::Index k = 0;
      for (std::size_t t = 0; t < thetas.size(); ++t) {
        if (status[t] != TrialStatus::Ok) continue;
        obs.row(k) = thetas[t].transpose();
        vals[k] = objectives[t];
        ++k;
      }
      GpModel model = GpModel::fit(obs, vals, box);
      theta = propose_next(model, box, best_objective(), cfg, rng);
    }

    std::vector<std::size_t> sub = idx.query_radius(center, theta[1]);
    thetas.push_back(theta);
    if (sub.size() < 3) {
      objectives.push_back(neg_inf);
      status.push_back(TrialStatus::DegenerateSplit);
      continue;
    }
    const std::size_t n_val = std::min(
        sub.size() - 1,
        std::max<std::size_t>(
            2, static_cast<std::size_t>(
                   std::llround(cfg.split_fraction *
                                static_cast<double>(sub.size())))));
    std::nth_element(sub.begin(),
                     sub.begin() + static_cast<std::ptrdiff_t>(n_val - 1),
                     sub.end(), [&](std::size_t a, std::size_t b) {
                       return score[a] != score[b] ? score[a] < score[b]
                                                   : a < b;
                     });
    std::vector<std::size_t> val_idx(sub.begin(),
                                     sub.begin() +
                                         static_cast<std::ptrdiff_t>(n_val));
    std::vector<std::size_t> train_idx(
        sub.begin() + static_cast<std::ptrdiff_t>(n_val), sub.end());
    std::sort(val_idx.begin(), val_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    Eigen::MatrixXd train_pts(train_idx.size(), ps.dim());
    Eigen::VectorXd train_vals(train_idx.size());
    for (std::size_t k = 0; k < train_idx.size(); ++k) {
      train_pts.row(static_cast<Eigen::Index>(k)) =
          ps.points.row(static_cast<Eigen::Index>(train_idx[k]));
      train_vals[static_cast<Eigen::Index>(k)] =
          (*ps.values)[static_cast<Eigen::Index>(train_idx[k])];
    }
    Eigen::MatrixXd val_pts(val_idx.size(), ps.dim());
    Eigen::VectorXd val_vals(val_idx.size());
    for (std::size_t k = 0; k < val_idx.size(); ++k) {
      val_pts.row(static_cast<Eigen::Index>(k)) =
          ps.points.row(static_cast<Eigen::Index>(val_idx[k]));
      val_vals[static_cast<Eigen::Index>(k)] =
          (*ps.values)[static_cast<Eigen::Index>(val_idx[k])];
    }

    try {
      LocalModel model =
          fit_local(train_pts, train_vals, KernelSpec{cfg.family, theta[0]});
      const Eigen::VectorXd pred = eval_local(model, val_pts);
      const double mae = (pred - val_vals).lpNorm<Eigen::Infinity>();
      objectives.push_back(-mae);
      status.push_back(TrialStatus::Ok);
      if (mae <= cfg.tau) break;
    } catch (const IllConditionedError&) {
      objectives.push_back(neg_inf);
      status.push_back(TrialStatus::IllConditioned);
    }
  }

  BoResult result;
  result.trace.thetas.resize(static_cast<Eigen::Index>(thetas.size()), 2);
  result.trace.objectives.resize(static_cast<Eigen::Index>(thetas.size()));
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    result.trace.thetas.row(static_cast<Eigen::Index>(t)) =
        thetas[t].transpose();
    result.trace.objectives[static_cast<Eigen::Index>(t)] = objectives[t];
  }
  result.trace.status = status;

  Eigen::Index best = -1;
  double best_g = neg_inf;
  for (std::size_t t = 0; t < objectives.size(); ++t) {
    if (status[t] == TrialStatus::Ok && objectives[t] > best_g) {
      best_g = objectives[t];
      best = static_cast<Eigen::Index>(t);
    }
  }
  if (best < 0)
    throw SubdomainSearchFailed(subdomain_id,
                                "bo_search: every trial failed for subdomain " +
                                    std::to_string(subdomain_id));
  result.trace.best = best;
  result.best_theta = thetas[static_cast<std::size_t>(best)];
  return result;
}

}  // namespace pumbo
