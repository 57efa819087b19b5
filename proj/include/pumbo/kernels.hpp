#pragma once

#include <Eigen/Dense>
#include <string>

#include "pumbo/errors.hpp"

namespace pumbo {

enum class KernelFamily { Gaussian, MaternC4, WendlandC4 };

KernelFamily parse_kernel_family(const std::string& name);
std::string kernel_family_name(KernelFamily family);

// Radial kernel kappa_eps(x, z) = phi(eps * ||x - z||).
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double epsilon = 1.0;  // > 0
};

// phi(eps * r) for the selected family:
//   Gaussian    exp(-eps^2 r^2)
//   Matern C4   exp(-eps r) (3 + 3 eps r + eps^2 r^2)
//   Wendland C4 (35 eps^2 r^2 + 18 eps r + 3) (1 - eps r)_+^6
// Wendland returns an exact 0 for eps*r >= 1. Throws on r < 0.
double eval_rbf(const KernelSpec& spec, double r);

// M(i, k) = phi(eps * ||a_i - b_k||).
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a,
                              const Eigen::MatrixXd& b);

}  // namespace pumbo
