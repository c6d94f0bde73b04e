#include "bcscg/evaluation.hpp"

#include <stdexcept>
#include <utility>

namespace bcscg {

BoxDomain::BoxDomain(Eigen::VectorXd l, Eigen::VectorXd u)
    : lower(std::move(l)), upper(std::move(u)) {
  if (lower.size() != upper.size() || lower.size() == 0)
    throw std::invalid_argument("BoxDomain: bound vectors must share a positive dimension");
  if (!(lower.array() < upper.array()).all())
    throw std::invalid_argument("BoxDomain: lower bounds must be strictly below upper bounds");
}

BoxDomain BoxDomain::uniform(int n, double lo, double hi) {
  return BoxDomain(Eigen::VectorXd::Constant(n, lo), Eigen::VectorXd::Constant(n, hi));
}

Evaluator::Evaluator(Objective objective, BoxDomain box, long budget)
    : objective_(std::move(objective)), box_(std::move(box)), budget_(budget) {
  if (budget_ < 0) throw std::invalid_argument("Evaluator: budget must be nonnegative");
}

double Evaluator::operator()(const Eigen::VectorXd& x) {
  if (!box_.contains(x)) return kBarrierValue;

  std::vector<double> key(x.data(), x.data() + x.size());
  auto hit = cache_.find(key);
  if (hit != cache_.end()) return hit->second;

  if (used_ >= budget_) throw BudgetExhausted();
  double value = objective_(x);
  ++used_;
  cache_.emplace(std::move(key), value);
  feasible_.emplace_back(x, value);
  if (!has_best_ || value < best_value_) {
    best_point_ = x;
    best_value_ = value;
    has_best_ = true;
  }
  history_.emplace_back(used_, best_value_);
  return value;
}

std::vector<std::pair<Eigen::VectorXd, double>> Evaluator::points_within(
    const Eigen::VectorXd& center, double radius) const {
  std::vector<std::pair<Eigen::VectorXd, double>> found;
  for (const auto& [point, value] : feasible_) {
    double dist = (point - center).norm();
    if (dist > 1e-14 && dist <= radius) found.emplace_back(point, value);
  }
  return found;
}

}  // namespace bcscg
