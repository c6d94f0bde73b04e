#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bcscg/box.hpp"

namespace bcscg {

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Extreme-barrier value assigned to infeasible points.
inline constexpr double kBarrierValue = 1.79e308;

struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

// Budget-gated objective with an extreme barrier and an exact-match cache.
// Infeasible points receive kBarrierValue without spending budget and never
// enter the cache; repeated requests for a cached point return the stored
// value for free. Each true evaluation appends a best-so-far history entry.
class Evaluator {
 public:
  Evaluator(Objective objective, BoxDomain box, long budget);

  double operator()(const Eigen::VectorXd& x);

  long budget() const { return budget_; }
  long evaluations_used() const { return used_; }
  long remaining() const { return budget_ - used_; }

  const BoxDomain& box() const { return box_; }

  // Feasible evaluations in the order they were made.
  const std::vector<std::pair<Eigen::VectorXd, double>>& feasible_evaluations() const {
    return feasible_;
  }

  // (evaluation count, best value so far), one entry per true evaluation.
  const std::vector<std::pair<long, double>>& best_history() const { return history_; }

  bool has_best() const { return has_best_; }
  const Eigen::VectorXd& best_point() const { return best_point_; }
  double best_value() const { return best_value_; }

  // Cached feasible points within Euclidean distance `radius` of `center`,
  // excluding points coincident with the center.
  std::vector<std::pair<Eigen::VectorXd, double>> points_within(const Eigen::VectorXd& center,
                                                                double radius) const;

 private:
  Objective objective_;
  BoxDomain box_;
  long budget_ = 0;
  long used_ = 0;
  std::map<std::vector<double>, double> cache_;
  std::vector<std::pair<Eigen::VectorXd, double>> feasible_;
  std::vector<std::pair<long, double>> history_;
  Eigen::VectorXd best_point_;
  double best_value_ = 0.0;
  bool has_best_ = false;
};

}  // namespace bcscg
