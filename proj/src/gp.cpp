#include "pumbo/gp.hpp"

#include <cmath>
#include <limits>

namespace pumbo {

double matern52(double r, double ell) {
  const double s = std::sqrt(5.0) * r / ell;
  return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

namespace {

Eigen::MatrixXd gram(const Eigen::MatrixXd& x, double ell) {
  const Eigen::Index s = x.rows();
  Eigen::MatrixXd k(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < s; ++j) {
      k(i, j) = k(j, i) = matern52((x.row(i) - x.row(j)).norm(), ell);
    }
  }
  return k;
}

Eigen::Vector2d normalize_theta(const Eigen::Vector2d& theta,
                                const SearchBox& box) {
  const double eps_span = box.eps_hi - box.eps_lo;
  const double delta_span = box.delta_hi - box.delta_lo;
  return {eps_span > 0.0 ? (theta[0] - box.eps_lo) / eps_span : 0.5,
          delta_span > 0.0 ? (theta[1] - box.delta_lo) / delta_span : 0.5};
}

}  // namespace

GpModel GpModel::fit(const Eigen::MatrixXd& thetas, const Eigen::VectorXd& values,
                     const SearchBox& box) {
  const Eigen::Index s = thetas.rows();
  if (s < 1) throw ConfigError("GpModel::fit: no observations");
  if (thetas.cols() != 2) throw ConfigError("GpModel::fit: thetas must be s x 2");
  if (values.size() != s) throw ConfigError("GpModel::fit: size mismatch");
  if (!values.allFinite() || !thetas.allFinite())
    throw ConfigError("GpModel::fit: non-finite input");

  GpModel model;
  model.box_ = box;
  model.inputs_.resize(s, 2);
  for (Eigen::Index i = 0; i < s; ++i)
    model.inputs_.row(i) =
        normalize_theta(thetas.row(i).transpose(), box).transpose();

  model.y_mean_ = values.mean();
  const double var =
      (values.array() - model.y_mean_).square().sum() / static_cast<double>(s);
  model.y_std_ = std::max(std::sqrt(var), 1e-12);
  const Eigen::VectorXd y = (values.array() - model.y_mean_) / model.y_std_;

  // length scale by log marginal likelihood over a 25-point log grid
  const int n_grid = 25;
  const double log_lo = std::log(1e-2), log_hi = std::log(1e1);
  double best_lml = -std::numeric_limits<double>::infinity();
  double best_ell = 1.0;
  for (int g = 0; g < n_grid; ++g) {
    const double ell = std::exp(log_lo + (log_hi - log_lo) * g / (n_grid - 1));
    Eigen::MatrixXd k = gram(model.inputs_, ell);
    k.diagonal().array() += 1e-8;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) continue;
    const Eigen::VectorXd alpha = llt.solve(y);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < s; ++i)
      log_det += std::log(llt.matrixLLT()(i, i));
    const double lml = -0.5 * y.dot(alpha) - log_det;
    if (lml > best_lml) {
      best_lml = lml;
      best_ell = ell;
    }
  }
  model.length_scale_ = best_ell;

  // noise escalation in case the chosen system is still not factorizable
  for (double noise = 1e-8; noise <= 1e-4 * (1.0 + 1e-12); noise *= 10.0) {
    Eigen::MatrixXd k = gram(model.inputs_, best_ell);
    k.diagonal().array() += noise;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) continue;
    Eigen::VectorXd alpha = llt.solve(y);
    if (!alpha.allFinite()) continue;
    model.noise_var_ = noise;
    model.factor_ = std::move(llt);
    model.alpha_ = std::move(alpha);
    return model;
  }
  throw ConfigError("GpModel::fit: Cholesky failed at maximum noise");
}

GpModel::Prediction GpModel::predict(const Eigen::Vector2d& theta) const {
  const Eigen::Index s = inputs_.rows();
  const Eigen::Vector2d u = normalize_theta(theta, box_);
  Eigen::VectorXd k_star(s);
  for (Eigen::Index i = 0; i < s; ++i)
    k_star[i] = matern52((inputs_.row(i).transpose() - u).norm(), length_scale_);

  const double mean_std = k_star.dot(alpha_);
  const Eigen::VectorXd v = factor_.matrixL().solve(k_star);
  double var = 1.0 - v.squaredNorm();
  if (var < 0.0) var = 0.0;  // roundoff clamp

  return {y_mean_ + y_std_ * mean_std, y_std_ * std::sqrt(var)};
}

}  // namespace pumbo
