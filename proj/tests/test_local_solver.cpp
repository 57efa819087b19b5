#include <doctest.h>

#include <cmath>

#include "pumbo/local_solver.hpp"
#include "pumbo/rng.hpp"

using namespace pumbo;

namespace {

Eigen::MatrixXd random_points(Eigen::Index n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd pts(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) pts(i, a) = rng.next_double();
  return pts;
}

}  // namespace

TEST_CASE("1x1 system: coefficient equals the data value for the Gaussian") {
  Eigen::MatrixXd node(1, 2);
  node << 0.3, 0.3;
  Eigen::VectorXd f(1);
  f << 2.5;
  auto model = fit_local(node, f, {KernelFamily::Gaussian, 3.0});
  CHECK(model.coeffs[0] == doctest::Approx(2.5));
  CHECK(model.jitter_used == 0.0);
}

TEST_CASE("2x2 system matches the closed-form inverse") {
  const double eps = 2.0, r = 0.4;
  Eigen::MatrixXd nodes(2, 2);
  nodes << 0.1, 0.1, 0.1 + r, 0.1;
  Eigen::VectorXd f(2);
  f << 1.0, -0.5;
  auto model = fit_local(nodes, f, {KernelFamily::Gaussian, eps});

  const double a = std::exp(-eps * eps * r * r);
  const double det = 1.0 - a * a;
  Eigen::Vector2d want{(f[0] - a * f[1]) / det, (f[1] - a * f[0]) / det};
  CHECK(model.coeffs.isApprox(want, 1e-10));
}

TEST_CASE("40-node matern system has a tiny residual") {
  auto nodes = random_points(40, 2, 17);
  Rng rng(18);
  Eigen::VectorXd f(40);
  for (int i = 0; i < 40; ++i) f[i] = 2.0 * rng.next_double() - 1.0;

  KernelSpec spec{KernelFamily::MaternC4, 5.0};
  auto model = fit_local(nodes, f, spec);
  Eigen::MatrixXd k = kernel_matrix(spec, nodes, nodes);
  k.diagonal().array() += model.jitter_used;
  CHECK((k * model.coeffs - f).lpNorm<Eigen::Infinity>() <=
        1e-8 * (1.0 + f.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("interpolation reproduces training values with zero jitter") {
  auto nodes = random_points(30, 2, 21);
  Eigen::VectorXd f(30);
  for (int i = 0; i < 30; ++i) f[i] = std::sin(5.0 * nodes(i, 0)) * nodes(i, 1);
  auto model = fit_local(nodes, f, {KernelFamily::Gaussian, 8.0});
  if (model.jitter_used == 0.0) {
    auto pred = eval_local(model, nodes);
    CHECK((pred - f).lpNorm<Eigen::Infinity>() <=
          1e-6 * (1.0 + f.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("single node prediction follows the kernel profile") {
  Eigen::MatrixXd node(1, 2);
  node << 0.5, 0.5;
  Eigen::VectorXd f(1);
  f << 2.0;
  const double eps = 3.0;
  auto model = fit_local(node, f, {KernelFamily::Gaussian, eps});
  const double r = 0.2;
  Eigen::MatrixXd target(1, 2);
  target << 0.5 + r, 0.5;
  CHECK(eval_local(model, target)[0] ==
        doctest::Approx(2.0 * std::exp(-eps * eps * r * r)).epsilon(1e-12));
}

TEST_CASE("empty target list yields an empty vector") {
  Eigen::MatrixXd node(1, 2);
  node << 0, 0;
  Eigen::VectorXd f(1);
  f << 1.0;
  auto model = fit_local(node, f, {KernelFamily::Gaussian, 1.0});
  CHECK(eval_local(model, Eigen::MatrixXd(0, 2)).size() == 0);
}

TEST_CASE("permutation equivariance") {
  auto nodes = random_points(12, 2, 33);
  Rng rng(34);
  Eigen::VectorXd f(12);
  for (int i = 0; i < 12; ++i) f[i] = rng.next_double();

  auto m1 = fit_local(nodes, f, {KernelFamily::MaternC4, 4.0});
  // reversed order
  Eigen::MatrixXd nodes_r = nodes.colwise().reverse();
  Eigen::VectorXd f_r = f.reverse();
  auto m2 = fit_local(nodes_r, f_r, {KernelFamily::MaternC4, 4.0});

  auto targets = random_points(5, 2, 35);
  CHECK((eval_local(m1, targets) - eval_local(m2, targets))
            .lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("scaling linearity") {
  auto nodes = random_points(15, 2, 41);
  Rng rng(42);
  Eigen::VectorXd f(15);
  for (int i = 0; i < 15; ++i) f[i] = rng.next_double();
  const double alpha = 3.75;

  auto m1 = fit_local(nodes, f, {KernelFamily::Gaussian, 6.0});
  auto m2 = fit_local(nodes, (alpha * f).eval(), {KernelFamily::Gaussian, 6.0});
  auto targets = random_points(8, 2, 43);
  Eigen::VectorXd p1 = eval_local(m1, targets);
  Eigen::VectorXd p2 = eval_local(m2, targets);
  CHECK((p2 - alpha * p1).lpNorm<Eigen::Infinity>() <=
        1e-10 * (1.0 + p1.lpNorm<Eigen::Infinity>() * alpha));
}

TEST_CASE("flat kernel on duplicate-free nodes engages the jitter ladder") {
  // near-singular: eps -> 0 makes the Gaussian matrix nearly all ones
  auto nodes = random_points(25, 2, 51);
  Eigen::VectorXd f = Eigen::VectorXd::Ones(25);
  auto model = fit_local(nodes, f, {KernelFamily::Gaussian, 1e-5});
  CHECK(model.jitter_used >= 0.0);
  // residual contract still holds on the jittered system
  Eigen::MatrixXd k = kernel_matrix(model.spec, nodes, nodes);
  k.diagonal().array() += model.jitter_used;
  CHECK((k * model.coeffs - f).lpNorm<Eigen::Infinity>() <= 1e-8 * 2.0);
}
