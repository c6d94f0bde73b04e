#pragma once

#include <Eigen/Core>

namespace bcscg {

// Axis-aligned feasible region { x : lower <= x <= upper }, bounds inclusive.
struct BoxDomain {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  BoxDomain() = default;
  BoxDomain(Eigen::VectorXd l, Eigen::VectorXd u);

  static BoxDomain uniform(int n, double lo, double hi);

  int dim() const { return static_cast<int>(lower.size()); }

  bool contains(const Eigen::VectorXd& x) const {
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
  }

  double min_width() const { return (upper - lower).minCoeff(); }
  double max_width() const { return (upper - lower).maxCoeff(); }
};

}  // namespace bcscg
