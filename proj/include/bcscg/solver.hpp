#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bcscg/box.hpp"
#include "bcscg/evaluation.hpp"
#include "bcscg/params.hpp"

namespace bcscg {

struct InfeasibleStart : std::runtime_error {
  InfeasibleStart() : std::runtime_error("starting point is outside the box") {}
};

struct InfeasibleBudget : std::runtime_error {
  InfeasibleBudget() : std::runtime_error("budget must allow at least n+1 evaluations") {}
};

enum class Termination { Budget, Stationary };

struct RunTrace {
  std::vector<std::pair<long, double>> best_history;  // one entry per true evaluation
  Eigen::VectorXd final_point;
  double final_value = 0.0;
  Termination termination = Termination::Budget;
  long evaluations_used = 0;
  long iterations = 0;
  long poll_rotations = 0;
};

// Poll size update driven by the search-step length. Both guards read the
// incoming delta_p and the later assignment wins:
//   step > delta_p     -> step
//   step > 2 * delta_p -> tau_u * delta_p
double update_poll_parameters(double delta_p, double step_length, double tau_u);

// Direct search with n+1 equiangular poll directions rotated through Halton
// points, enhanced by a search step made of a quadratic-model descent, a
// simplex-gradient probe, a vicinity search, and a scaled-conjugate-gradient
// line search. Terminates when the poll radius falls to eps (Stationary) or
// the evaluation budget runs out (Budget).
RunTrace solve(const Objective& objective, const BoxDomain& box, const Eigen::VectorXd& x0,
               const SolverParams& params = {});

}  // namespace bcscg
