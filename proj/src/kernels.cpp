#include "pumbo/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace pumbo {

KernelFamily parse_kernel_family(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "gaussian") return KernelFamily::Gaussian;
  if (s == "matern" || s == "matern_c4" || s == "maternc4")
    return KernelFamily::MaternC4;
  if (s == "wendland" || s == "wendland_c4" || s == "wendlandc4")
    return KernelFamily::WendlandC4;
  throw ConfigError("unknown kernel family: " + name);
}

std::string kernel_family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::MaternC4: return "matern";
    case KernelFamily::WendlandC4: return "wendland";
  }
  return "?";
}

double eval_rbf(const KernelSpec& spec, double r) {
  if (r < 0.0) throw std::invalid_argument("eval_rbf: negative radius");
  const double t = spec.epsilon * r;
  switch (spec.family) {
    case KernelFamily::Gaussian:
      return std::exp(-t * t);
    case KernelFamily::MaternC4:
      return std::exp(-t) * (3.0 + 3.0 * t + t * t);
    case KernelFamily::WendlandC4: {
      if (t >= 1.0) return 0.0;  // exact zero outside the support
      const double u = 1.0 - t;
      const double u2 = u * u;
      const double u6 = u2 * u2 * u2;
      return (35.0 * t * t + 18.0 * t + 3.0) * u6;
    }
  }
  return 0.0;
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a,
                              const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols())
    throw DataError("kernel_matrix: dimension mismatch");
  Eigen::MatrixXd m(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < b.rows(); ++k)
      m(i, k) = eval_rbf(spec, (a.row(i) - b.row(k)).norm());
  return m;
}

}  // namespace pumbo
