#pragma once

#include <Eigen/Dense>

#include "pumbo/errors.hpp"

namespace pumbo {

// Axis-aligned box in (epsilon, delta) parameter space.
struct SearchBox {
  double eps_lo, eps_hi;
  double delta_lo, delta_hi;
};

// Gaussian-process surrogate over theta = (epsilon, delta) with a Matern 5/2
// kernel. Inputs are min-max normalized to [0,1]^2 by the search box; targets
// are standardized. Immutable after fit.
class GpModel {
 public:
  // thetas: s x 2 (epsilon, delta), values: length s. Length scale is picked
  // by log-marginal-likelihood over a 25-point log grid in [1e-2, 1e1];
  // sigma_f^2 = 1 and sigma_n^2 = 1e-8 fixed (noise escalates tenfold up to
  // 1e-4 if the Cholesky fails).
  static GpModel fit(const Eigen::MatrixXd& thetas, const Eigen::VectorXd& values,
                     const SearchBox& box);

  struct Prediction {
    double mean;
    double std;  // >= 0
  };
  Prediction predict(const Eigen::Vector2d& theta) const;

  double length_scale() const { return length_scale_; }
  double noise_variance() const { return noise_var_; }
  Eigen::Index n_observations() const { return inputs_.rows(); }

 private:
  GpModel() = default;

  Eigen::MatrixXd inputs_;  // normalized to [0,1]^2
  Eigen::VectorXd alpha_;   // (K + sigma_n^2 I)^{-1} g, standardized targets
  Eigen::LLT<Eigen::MatrixXd> factor_;
  double length_scale_ = 1.0;
  double noise_var_ = 1e-8;
  double y_mean_ = 0.0, y_std_ = 1.0;
  SearchBox box_{};
};

// Matern 5/2 correlation (sigma_f^2 = 1) at distance r with length scale ell.
double matern52(double r, double ell);

}  // namespace pumbo
