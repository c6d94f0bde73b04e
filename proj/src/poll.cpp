#include "bcscg/poll.hpp"

namespace bcscg {

bool sufficient_decrease(double f_new, double f_incumbent, double r, double rho) {
  return f_new < f_incumbent - rho * r * r;
}

PollOutcome poll_step(const Eigen::VectorXd& incumbent, double incumbent_value, double radius,
                      double poll_parameter, const DirectionBasis& base, HaltonCursor& cursor,
                      Evaluator& evaluate, const SolverParams& params) {
  PollOutcome out;
  out.radius = radius;
  out.poll_parameter = poll_parameter;

  DirectionBasis current = base;
  while (out.radius > params.eps) {
    std::size_t round_begin = out.trial_set.size();
    for (const Eigen::VectorXd& d : current.directions) {
      Eigen::VectorXd trial = incumbent + out.radius * d;
      double value = evaluate(trial);
      out.trial_set.emplace_back(std::move(trial), value);
    }

    std::size_t best = round_begin;
    for (std::size_t i = round_begin + 1; i < out.trial_set.size(); ++i)
      if (out.trial_set[i].second < out.trial_set[best].second) best = i;

    if (sufficient_decrease(out.trial_set[best].second, incumbent_value, out.radius, params.rho)) {
      out.status = PollStatus::Success;
      out.best_point = out.trial_set[best].first;
      out.best_value = out.trial_set[best].second;
      return out;
    }

    // Failure: rotate the original equiangular set about a fresh Halton
    // direction and shrink both size parameters.
    current = rotate_basis(base, halton_direction(cursor));
    out.poll_parameter /= params.tau_l;
    out.radius /= params.tau_l;
    ++out.rotations;
  }

  out.status = PollStatus::Exhausted;
  return out;
}

}  // namespace bcscg
