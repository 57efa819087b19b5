#include "pumbo/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pumbo/errors.hpp"

namespace pumbo {

SpatialIndex::SpatialIndex(const Eigen::MatrixXd& points) : points_(points) {
  if (points_.rows() == 0) throw DataError("SpatialIndex: empty point set");
  order_.resize(size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  nodes_.reserve(2 * size() / kLeafSize + 2);
  root_ = build(0, size());
}

std::size_t SpatialIndex::build(std::size_t begin, std::size_t end) {
  Node node;
  node.begin = begin;
  node.end = end;

  const Eigen::Index d = points_.cols();
  node.lo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  node.hi = -node.lo;
  for (std::size_t k = begin; k < end; ++k) {
    const auto row = points_.row(static_cast<Eigen::Index>(order_[k]));
    node.lo = node.lo.cwiseMin(row.transpose());
    node.hi = node.hi.cwiseMax(row.transpose());
  }

  if (end - begin <= kLeafSize) {
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  // widest-spread axis, median split
  Eigen::Index axis;
  (node.hi - node.lo).maxCoeff(&axis);
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     return points_(static_cast<Eigen::Index>(a), axis) <
                            points_(static_cast<Eigen::Index>(b), axis);
                   });
  node.axis = static_cast<int>(axis);
  node.split = points_(static_cast<Eigen::Index>(order_[mid]), axis);

  const std::size_t self = nodes_.size();
  nodes_.push_back(std::move(node));
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

namespace {

// squared distance from a point to an axis-aligned box
double box_dist2(const Eigen::VectorXd& c, const Eigen::VectorXd& lo,
                 const Eigen::VectorXd& hi) {
  double d2 = 0.0;
  for (Eigen::Index a = 0; a < c.size(); ++a) {
    double g = 0.0;
    if (c[a] < lo[a]) g = lo[a] - c[a];
    else if (c[a] > hi[a]) g = c[a] - hi[a];
    d2 += g * g;
  }
  return d2;
}

}  // namespace

template <typename Visit>
void SpatialIndex::walk_ball(const Eigen::VectorXd& center, double r,
                             Visit&& visit) const {
  const double r2 = r * r;
  std::vector<std::size_t> stack{root_};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (box_dist2(center, node.lo, node.hi) > r2) continue;
    if (node.right == 0) {  // leaf
      for (std::size_t k = node.begin; k < node.end; ++k) {
        const std::size_t i = order_[k];
        const double d2 =
            (points_.row(static_cast<Eigen::Index>(i)).transpose() - center)
                .squaredNorm();
        if (d2 <= r2) visit(i);
      }
    } else {
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }
}

std::vector<std::size_t> SpatialIndex::query_radius(
    const Eigen::VectorXd& center, double r) const {
  if (r < 0.0) throw std::invalid_argument("query_radius: negative radius");
  std::vector<std::size_t> out;
  walk_ball(center, r, [&](std::size_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SpatialIndex::count_radius(const Eigen::VectorXd& center,
                                       double r) const {
  if (r < 0.0) throw std::invalid_argument("count_radius: negative radius");
  std::size_t n = 0;
  walk_ball(center, r, [&](std::size_t) { ++n; });
  return n;
}

std::size_t SpatialIndex::nearest(const Eigen::VectorXd& target) const {
  double best2 = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  std::vector<std::size_t> stack{root_};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (box_dist2(target, node.lo, node.hi) > best2) continue;
    if (node.right == 0) {
      for (std::size_t k = node.begin; k < node.end; ++k) {
        const std::size_t i = order_[k];
        const double d2 =
            (points_.row(static_cast<Eigen::Index>(i)).transpose() - target)
                .squaredNorm();
        if (d2 < best2 || (d2 == best2 && i < best)) {
          best2 = d2;
          best = i;
        }
      }
    } else {
      // descend toward the target side first
      const std::size_t near = target[node.axis] <= node.split ? node.left
                                                               : node.right;
      const std::size_t far = near == node.left ? node.right : node.left;
      stack.push_back(far);
      stack.push_back(near);
    }
  }
  return best;
}

}  // namespace pumbo
