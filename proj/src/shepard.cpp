#include "pumbo/shepard.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "pumbo/errors.hpp"
#include "pumbo/local_solver.hpp"

namespace pumbo {

namespace {

// Wendland C2 bump, positive on the open ball, zero at and beyond s = 1.
double bump(double s) {
  if (s >= 1.0) return 0.0;
  const double u = 1.0 - s;
  const double u2 = u * u;
  return u2 * u2 * (4.0 * s + 1.0);
}

}  // namespace

WeightField shepard_weights(const Eigen::MatrixXd& targets,
                            const SubdomainLayout& layout) {
  if ((layout.radii.array() <= 0.0).any())
    throw ConfigError("shepard_weights: nonpositive radius");

  WeightField field;
  field.per_point.resize(targets.rows());
  if (targets.rows() == 0) return field;

  SpatialIndex target_tree(targets);
  for (Eigen::Index j = 0; j < layout.count(); ++j) {
    const Eigen::VectorXd c = layout.center(j);
    const double delta = layout.radii[j];
    for (std::size_t t : target_tree.query_radius(c, delta)) {
      const double s =
          (targets.row(static_cast<Eigen::Index>(t)).transpose() - c).norm() /
          delta;
      const double psi = bump(s);
      if (psi > 0.0)
        field.per_point[t].push_back({static_cast<std::size_t>(j), psi});
    }
  }

  for (std::size_t t = 0; t < field.per_point.size(); ++t) {
    auto& entries = field.per_point[t];
    if (entries.empty()) {
      field.uncovered.push_back(t);
      continue;
    }
    double total = 0.0;
    for (const auto& e : entries) total += e.weight;
    for (auto& e : entries) e.weight /= total;
  }
  return field;
}

Eigen::VectorXd pum_evaluate(const PointSet& ps, const Eigen::MatrixXd& targets,
                             const SubdomainLayout& layout,
                             const SpatialIndex& idx, KernelFamily family,
                             PumDiagnostics* diag, unsigned n_threads) {
  if (!ps.has_values()) throw DataError("pum_evaluate: point set has no values");

  PumDiagnostics local_diag;
  PumDiagnostics& dg = diag ? *diag : local_diag;
  dg = PumDiagnostics{};

  // evaluation outside the unit cube is undefined upstream; clamp and report
  Eigen::MatrixXd eval = targets;
  for (Eigen::Index t = 0; t < eval.rows(); ++t) {
    bool touched = false;
    for (Eigen::Index a = 0; a < eval.cols(); ++a) {
      if (eval(t, a) < 0.0 || eval(t, a) > 1.0) {
        eval(t, a) = std::clamp(eval(t, a), 0.0, 1.0);
        touched = true;
      }
    }
    if (touched) dg.clamped.push_back(static_cast<std::size_t>(t));
  }

  const WeightField field = shepard_weights(eval, layout);
  dg.uncovered = field.uncovered;

  const Eigen::Index m = layout.count();

  // invert the per-point weight lists into per-subdomain target lists
  std::vector<std::vector<std::pair<std::size_t, double>>> covered(m);
  for (std::size_t t = 0; t < field.per_point.size(); ++t)
    for (const auto& e : field.per_point[t])
      covered[e.subdomain].push_back({t, e.weight});

  struct Contribution {
    std::vector<std::size_t> targets;
    Eigen::VectorXd weighted;  // weight * local prediction
    LocalModel model;
    bool fitted = false;
  };
  std::vector<Contribution> contribs(m);

  auto run_subdomain = [&](Eigen::Index j) {
    auto data_idx = idx.query_radius(layout.center(j), layout.radii[j]);
    if (data_idx.empty() || covered[j].empty()) return;

    Eigen::MatrixXd nodes(data_idx.size(), ps.dim());
    Eigen::VectorXd vals(data_idx.size());
    for (std::size_t k = 0; k < data_idx.size(); ++k) {
      nodes.row(static_cast<Eigen::Index>(k)) =
          ps.points.row(static_cast<Eigen::Index>(data_idx[k]));
      vals[static_cast<Eigen::Index>(k)] =
          (*ps.values)[static_cast<Eigen::Index>(data_idx[k])];
    }

    Contribution& c = contribs[j];
    try {
      c.model = fit_local(nodes, vals, KernelSpec{family, layout.shapes[j]});
    } catch (const IllConditionedError& e) {
      throw IllConditionedError("subdomain " + std::to_string(j) + ": " +
                                e.what());
    }
    c.fitted = true;

    Eigen::MatrixXd pts(covered[j].size(), eval.cols());
    for (std::size_t k = 0; k < covered[j].size(); ++k)
      pts.row(static_cast<Eigen::Index>(k)) =
          eval.row(static_cast<Eigen::Index>(covered[j][k].first));
    Eigen::VectorXd pred = eval_local(c.model, pts);
    c.weighted.resize(pred.size());
    c.targets.reserve(covered[j].size());
    for (std::size_t k = 0; k < covered[j].size(); ++k) {
      c.targets.push_back(covered[j][k].first);
      c.weighted[static_cast<Eigen::Index>(k)] =
          covered[j][k].second * pred[static_cast<Eigen::Index>(k)];
    }
  };

  if (n_threads <= 1 || m < 2) {
    for (Eigen::Index j = 0; j < m; ++j) run_subdomain(j);
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
            run_subdomain(j);
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

  // deterministic reduction by subdomain index
  Eigen::VectorXd out = Eigen::VectorXd::Zero(eval.rows());
  for (Eigen::Index j = 0; j < m; ++j) {
    const Contribution& c = contribs[j];
    for (std::size_t k = 0; k < c.targets.size(); ++k) {
      out[static_cast<Eigen::Index>(c.targets[k])] +=
          c.weighted[static_cast<Eigen::Index>(k)];
    }
    if (c.fitted) {
      dg.max_jitter = std::max(dg.max_jitter, c.model.jitter_used);
      if (c.model.jitter_used > 0.0) ++dg.nonzero_jitter_fits;
    }
  }

  // uncovered targets fall back to the nearest center's local model
  for (std::size_t t : field.uncovered) {
    Eigen::Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    const Eigen::VectorXd x = eval.row(static_cast<Eigen::Index>(t)).transpose();
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = (layout.center(j) - x).norm();
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    Contribution& c = contribs[best];
    if (!c.fitted) {
      auto data_idx = idx.query_radius(layout.center(best), layout.radii[best]);
      if (data_idx.empty())
        throw ConfigError("pum_evaluate: empty subdomain " +
                          std::to_string(best));
      Eigen::MatrixXd nodes(data_idx.size(), ps.dim());
      Eigen::VectorXd vals(data_idx.size());
      for (std::size_t k = 0; k < data_idx.size(); ++k) {
        nodes.row(static_cast<Eigen::Index>(k)) =
            ps.points.row(static_cast<Eigen::Index>(data_idx[k]));
        vals[static_cast<Eigen::Index>(k)] =
            (*ps.values)[static_cast<Eigen::Index>(data_idx[k])];
      }
      c.model = fit_local(nodes, vals, KernelSpec{family, layout.shapes[best]});
      c.fitted = true;
    }
    out[static_cast<Eigen::Index>(t)] =
        eval_local(c.model, x.transpose())[0];
  }

  return out;
}

}  // namespace pumbo
