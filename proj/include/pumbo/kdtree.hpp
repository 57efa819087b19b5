#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace pumbo {

// kd-tree over a fixed point cloud supporting exact closed-ball radius
// queries. Median split on the widest-spread axis, leaf bucket size 16.
// Immutable after construction; concurrent queries are safe.
class SpatialIndex {
 public:
  static constexpr std::size_t kLeafSize = 16;

  explicit SpatialIndex(const Eigen::MatrixXd& points);

  // Indices i with ||x_i - center||_2 <= r, sorted ascending.
  std::vector<std::size_t> query_radius(const Eigen::VectorXd& center,
                                        double r) const;

  // Count-only variant of query_radius.
  std::size_t count_radius(const Eigen::VectorXd& center, double r) const;

  // Index of the point closest to `target` (lowest index wins ties).
  std::size_t nearest(const Eigen::VectorXd& target) const;

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }

 private:
  struct Node {
    // Leaf iff right == 0. Children are stored at left and right.
    int axis = -1;
    double split = 0.0;
    std::size_t begin = 0, end = 0;  // range into order_ for leaves
    std::size_t left = 0, right = 0;
    Eigen::VectorXd lo, hi;  // bounding box of the node's points
  };

  std::size_t build(std::size_t begin, std::size_t end);
  template <typename Visit>
  void walk_ball(const Eigen::VectorXd& center, double r, Visit&& visit) const;

  Eigen::MatrixXd points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

}  // namespace pumbo
