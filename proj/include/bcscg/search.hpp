#pragma once

#include <optional>
#include <stdexcept>

#include <Eigen/Core>

#include "bcscg/evaluation.hpp"
#include "bcscg/models.hpp"
#include "bcscg/params.hpp"
#include "bcscg/poll.hpp"

namespace bcscg {

struct DegenerateTheta : std::runtime_error {
  DegenerateTheta() : std::runtime_error("scaling matrix denominator is numerically zero") {}
};

// Previous-iteration state for the scaled conjugate gradient direction:
// either both fields are present (a completed iteration) or neither is.
struct ScgMemory {
  std::optional<Eigen::VectorXd> prev_gradient;
  std::optional<Eigen::VectorXd> prev_step;

  bool empty() const { return !prev_gradient.has_value(); }
  void reset() {
    prev_gradient.reset();
    prev_step.reset();
  }
};

struct LineSearchResult {
  double step_length = 0.0;
  Eigen::VectorXd point;
  double value = 0.0;
};

struct Improvement {
  Eigen::VectorXd point;
  double value = 0.0;
};

// Largest alpha >= 0 with x + alpha d inside the box. Unbounded rays (only
// possible with infinite bounds) are capped at 10 * max width / |d|.
double max_feasible_step(const Eigen::VectorXd& x, const Eigen::VectorXd& d, const BoxDomain& box);

// Derivative-free Brent minimization of phi(a) = f(x + a d) over
// [0, max_feasible_step], golden sections with parabolic interpolation. The
// first probe sits at the golden interior point; at most max_iter + 2 true
// evaluations are spent. Returns alpha = 0 when nothing improves on phi(0).
LineSearchResult brent_line_search(Evaluator& evaluate, const Eigen::VectorXd& x,
                                   double value_at_x, const Eigen::VectorXd& d, int max_iter = 20,
                                   double tol = 1e-5);

// Fits a quadratic over the incumbent plus all finite-valued poll trials and,
// when the Hessian is positive definite, evaluates the model minimizer
// (directly if feasible, via a line search towards it otherwise). Returns the
// evaluated point only when it beats best_value. Callers must ensure every
// poll trial was feasible.
std::optional<Improvement> quadratic_model_step(const Eigen::VectorXd& incumbent,
                                                double incumbent_value, const TrialSet& trials,
                                                double best_value, Evaluator& evaluate,
                                                const SolverParams& params);

// Averages the `count` best trials with the current best point and evaluates
// one point at distance `radius` from the incumbent along each average
// direction. Degenerate directions are skipped.
Improvement vicinity_search(const Eigen::VectorXd& incumbent, double radius,
                            const TrialSet& trials, const Improvement& best, int count,
                            Evaluator& evaluate);

struct GradientProbe {
  std::optional<Eigen::VectorXd> gradient;
  std::optional<Improvement> probe;  // evaluated probe point; may carry the barrier value
};

// Computes the simplex gradient from cached feasible points within the ball
// of radius r(1 + eps2) around the incumbent and evaluates one point at
// distance r along the negative gradient. Returns no gradient when the set
// is empty, not poised, or the gradient is numerically zero.
GradientProbe simplex_gradient_probe(const Eigen::VectorXd& incumbent, double incumbent_value,
                                     double radius, Evaluator& evaluate,
                                     const SolverParams& params);

// theta = -s s^T / (s^T g) with s = best - incumbent; rank one, symmetric.
// Throws DegenerateTheta when s = 0 or |s^T g| <= 1e-14.
Eigen::MatrixXd scg_theta(const Eigen::VectorXd& best, const Eigen::VectorXd& incumbent,
                          const Eigen::VectorXd& gradient);

// d = -theta g + beta s with beta = ((theta y - s)^T g) / (y^T s), where y is
// the gradient difference and s the previous step. Returns -g on the first
// iteration or when y^T s degenerates.
Eigen::VectorXd scg_direction(const Eigen::MatrixXd& theta, const Eigen::VectorXd& gradient,
                              const ScgMemory& memory);

struct ScgResult {
  Improvement best;
  double step_length = 0.0;  // Euclidean length of the accepted line-search step
};

// Scaled-conjugate-gradient block: builds theta, forms the new direction and
// line searches along it when it is descent, falling back to a line search
// along best - incumbent otherwise. Without a gradient the block degrades to
// the fallback search and the memory is reset; with one, the realized step
// and gradient are stored for the next iteration.
ScgResult scg_step(const Eigen::VectorXd& incumbent, double incumbent_value,
                   const Improvement& best, const std::optional<Eigen::VectorXd>& gradient,
                   ScgMemory& memory, Evaluator& evaluate, const SolverParams& params);

}  // namespace bcscg
