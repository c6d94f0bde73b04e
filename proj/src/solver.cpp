#include "bcscg/solver.hpp"

#include <algorithm>
#include <cmath>

#include "bcscg/geometry.hpp"
#include "bcscg/poll.hpp"
#include "bcscg/search.hpp"

namespace bcscg {

double update_poll_parameters(double delta_p, double step_length, double tau_u) {
  double next = delta_p;
  if (step_length > delta_p) next = step_length;
  if (step_length > 2.0 * delta_p) next = tau_u * delta_p;
  return next;
}

RunTrace solve(const Objective& objective, const BoxDomain& box, const Eigen::VectorXd& x0,
               const SolverParams& params) {
  const int n = box.dim();
  if (x0.size() != n) throw std::invalid_argument("solve: x0 dimension mismatch");
  if (!box.contains(x0)) throw InfeasibleStart();
  const long budget = static_cast<long>(params.budget_multiplier) * (n + 1);
  if (budget < n + 1) throw InfeasibleBudget();

  Evaluator evaluate(objective, box, budget);
  DirectionBasis base = equiangular_basis(n);
  HaltonCursor cursor(n);
  ScgMemory memory;

  double radius = params.initial_radius_fraction * box.min_width();
  double delta_p = radius;
  const int vicinity_count = static_cast<int>(std::floor(params.vicinity_count_fraction * n));

  RunTrace trace;
  Eigen::VectorXd x = x0;

  try {
    double fx = evaluate(x);
    for (;;) {
      PollOutcome poll =
          poll_step(x, fx, radius, delta_p, base, cursor, evaluate, params);
      radius = poll.radius;
      delta_p = poll.poll_parameter;
      trace.poll_rotations += poll.rotations;
      ++trace.iterations;
      if (poll.status == PollStatus::Exhausted) {
        trace.termination = Termination::Stationary;
        break;
      }

      Improvement best{poll.best_point, poll.best_value};
      TrialSet trials = std::move(poll.trial_set);
      const bool all_feasible =
          std::all_of(trials.begin(), trials.end(),
                      [](const auto& t) { return t.second < kBarrierValue; });

      if (all_feasible) {
        if (auto improved =
                quadratic_model_step(x, fx, trials, best.value, evaluate, params))
          best = std::move(*improved);
      }

      std::optional<Eigen::VectorXd> gradient;
      if (all_feasible) {
        GradientProbe probe = simplex_gradient_probe(x, fx, radius, evaluate, params);
        gradient = std::move(probe.gradient);
        if (probe.probe) {
          trials.emplace_back(probe.probe->point, probe.probe->value);
          if (probe.probe->value < best.value) best = std::move(*probe.probe);
        }
      }

      best = vicinity_search(x, radius, trials, best, vicinity_count, evaluate);

      ScgResult scg = scg_step(x, fx, best, gradient, memory, evaluate, params);
      best = std::move(scg.best);

      delta_p = update_poll_parameters(delta_p, scg.step_length, params.tau_u);
      x = best.point;
      fx = best.value;
    }
  } catch (const BudgetExhausted&) {
    trace.termination = Termination::Budget;
  }

  trace.best_history = evaluate.best_history();
  trace.evaluations_used = evaluate.evaluations_used();
  trace.final_point = evaluate.best_point();
  trace.final_value = evaluate.best_value();
  return trace;
}

}  // namespace bcscg
