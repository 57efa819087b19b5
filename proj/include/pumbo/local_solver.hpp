#pragma once

#include <Eigen/Dense>

#include "pumbo/kernels.hpp"

namespace pumbo {

// Local RBF interpolant on one subdomain's nodes: coefficients solving
// (K + jitter I) c = f.
struct LocalModel {
  Eigen::MatrixXd nodes;   // N_j x d
  Eigen::VectorXd coeffs;  // length N_j
  KernelSpec spec;
  double jitter_used = 0.0;
};

// Solves K c = f by LLT, escalating diagonal jitter through
// {0, 1e-12, 1e-11, ..., 1e-6} * (trace(K)/N_j) until factorization
// succeeds and the residual is acceptable. Throws IllConditionedError when
// the ladder is exhausted.
LocalModel fit_local(const Eigen::MatrixXd& nodes, const Eigen::VectorXd& values,
                     const KernelSpec& spec);

// P_f(x) = sum_k c_k phi(eps ||x - x_k||) per target row.
Eigen::VectorXd eval_local(const LocalModel& model,
                           const Eigen::MatrixXd& targets);

}  // namespace pumbo
