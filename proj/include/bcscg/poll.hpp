#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bcscg/evaluation.hpp"
#include "bcscg/geometry.hpp"
#include "bcscg/params.hpp"

namespace bcscg {

// f_new < f_incumbent - rho * r^2, strict.
bool sufficient_decrease(double f_new, double f_incumbent, double r, double rho);

enum class PollStatus { Success, Exhausted };

using TrialSet = std::vector<std::pair<Eigen::VectorXd, double>>;

struct PollOutcome {
  PollStatus status = PollStatus::Exhausted;
  Eigen::VectorXd best_point;  // valid on Success
  double best_value = kBarrierValue;
  double radius = 0.0;          // r after the step
  double poll_parameter = 0.0;  // poll size parameter after the step
  long rotations = 0;           // failed rounds (each ends in a basis rotation)
  // Every evaluated trial, in direction order, across all rounds of this
  // step. Infeasible trials carry kBarrierValue.
  TrialSet trial_set;
};

// One poll step around the incumbent: evaluates n+1 trial points on the ball
// of radius r, accepts the best trial under sufficient decrease, otherwise
// rotates the base directions through a fresh Halton direction and shrinks
// both r and the poll parameter by tau_l. Returns Exhausted once r <= eps.
PollOutcome poll_step(const Eigen::VectorXd& incumbent, double incumbent_value, double radius,
                      double poll_parameter, const DirectionBasis& base, HaltonCursor& cursor,
                      Evaluator& evaluate, const SolverParams& params);

}  // namespace bcscg
