#include "pumbo/local_solver.hpp"

#include <cmath>

#include "pumbo/errors.hpp"

namespace pumbo {

LocalModel fit_local(const Eigen::MatrixXd& nodes, const Eigen::VectorXd& values,
                     const KernelSpec& spec) {
  const Eigen::Index n = nodes.rows();
  if (n < 1) throw DataError("fit_local: no nodes");
  if (values.size() != n)
    throw DataError("fit_local: |values| != |nodes|");

  const Eigen::MatrixXd k = kernel_matrix(spec, nodes, nodes);
  const double tau_k = k.trace() / static_cast<double>(n);
  const double f_scale = 1.0 + values.lpNorm<Eigen::Infinity>();

  // jitter ladder: 0, then 1e-12..1e-6 times the mean diagonal
  for (int level = -1; level <= 6; ++level) {
    const double jitter =
        level < 0 ? 0.0 : tau_k * std::pow(10.0, -12 + level);
    Eigen::MatrixXd sys = k;
    sys.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(sys);
    if (llt.info() != Eigen::Success) continue;
    Eigen::VectorXd c = llt.solve(values);
    if (!c.allFinite()) continue;
    if ((sys * c - values).lpNorm<Eigen::Infinity>() > 1e-8 * f_scale) continue;
    return LocalModel{nodes, std::move(c), spec, jitter};
  }
  throw IllConditionedError("fit_local: factorization failed at max jitter");
}

Eigen::VectorXd eval_local(const LocalModel& model,
                           const Eigen::MatrixXd& targets) {
  if (targets.rows() == 0) return Eigen::VectorXd(0);
  if (targets.cols() != model.nodes.cols())
    throw DataError("eval_local: dimension mismatch");
  return kernel_matrix(model.spec, targets, model.nodes) * model.coeffs;
}

}  // namespace pumbo
