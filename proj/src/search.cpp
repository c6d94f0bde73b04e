#include "bcscg/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bcscg {

double max_feasible_step(const Eigen::VectorXd& x, const Eigen::VectorXd& d,
                         const BoxDomain& box) {
  double alpha = std::numeric_limits<double>::infinity();
  for (int i = 0; i < box.dim(); ++i) {
    if (d[i] > 0.0)
      alpha = std::min(alpha, (box.upper[i] - x[i]) / d[i]);
    else if (d[i] < 0.0)
      alpha = std::min(alpha, (box.lower[i] - x[i]) / d[i]);
  }
  if (!std::isfinite(alpha)) alpha = 10.0 * box.max_width() / d.norm();
  return std::max(alpha, 0.0);
}

LineSearchResult brent_line_search(Evaluator& evaluate, const Eigen::VectorXd& x,
                                   double value_at_x, const Eigen::VectorXd& d, int max_iter,
                                   double tol) {
  constexpr double kGold = 0.3819660112501051;  // (3 - sqrt 5) / 2
  constexpr double kZeps = 1e-11;

  LineSearchResult incumbent{0.0, x, value_at_x};
  double upper = max_feasible_step(x, d, evaluate.box());
  if (!(upper > 0.0)) return incumbent;

  auto phi = [&](double alpha) { return evaluate(x + alpha * d); };

  double a = 0.0;
  double b = upper;
  double best = a + kGold * (b - a);
  double w = best, v = best;
  double f_best = phi(best);
  double fw = f_best, fv = f_best;
  double step = 0.0, prev_step = 0.0;

  for (int iter = 0; iter < max_iter; ++iter) {
    double mid = 0.5 * (a + b);
    double tol1 = tol * std::abs(best) + kZeps;
    double tol2 = 2.0 * tol1;
    if (std::abs(best - mid) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::abs(prev_step) > tol1) {
      // Parabola through (best, w, v); fall back to golden section when the
      // fit is unusable or steps outside the bracket.
      double r = (best - w) * (f_best - fv);
      double q = (best - v) * (f_best - fw);
      double p = (best - v) * q - (best - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      double scratch = prev_step;
      prev_step = step;
      if (!(std::abs(p) >= std::abs(0.5 * q * scratch) || p <= q * (a - best) ||
            p >= q * (b - best))) {
        step = p / q;
        double u = best + step;
        if (u - a < tol2 || b - u < tol2) step = std::copysign(tol1, mid - best);
        golden = false;
      }
    }
    if (golden) {
      prev_step = (best >= mid) ? a - best : b - best;
      step = kGold * prev_step;
    }

    double u = (std::abs(step) >= tol1) ? best + step : best + std::copysign(tol1, step);
    double fu = phi(u);
    if (fu <= f_best) {
      if (u >= best)
        a = best;
      else
        b = best;
      v = w;
      fv = fw;
      w = best;
      fw = f_best;
      best = u;
      f_best = fu;
    } else {
      if (u < best)
        a = u;
      else
        b = u;
      if (fu <= fw || w == best) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == best || v == w) {
        v = u;
        fv = fu;
      }
    }
  }

  if (f_best < value_at_x) return {best, x + best * d, f_best};
  return incumbent;
}

std::optional<Improvement> quadratic_model_step(const Eigen::VectorXd& incumbent,
                                                double incumbent_value, const TrialSet& trials,
                                                double best_value, Evaluator& evaluate,
                                                const SolverParams& params) {
  const int n = static_cast<int>(incumbent.size());

  // Model coordinates are centered at the incumbent for conditioning; the
  // minimizer is shifted back below.
  SampleSet samples;
  samples.center = Eigen::VectorXd::Zero(n);
  samples.values.push_back(incumbent_value);
  for (const auto& [point, value] : trials) {
    if (value >= kBarrierValue) continue;
    Eigen::VectorXd shifted = point - incumbent;
    bool duplicate = shifted.norm() <= 1e-14;
    for (const auto& existing : samples.points) {
      if (duplicate) break;
      duplicate = (existing - shifted).norm() <= 1e-14;
    }
    if (duplicate) continue;
    samples.points.push_back(std::move(shifted));
    samples.values.push_back(value);
  }
  if (1 + static_cast<long>(samples.points.size()) < n + 2) return std::nullopt;

  QuadraticModel model;
  try {
    model = fit_quadratic(samples);
  } catch (const SingularSystem&) {
    return std::nullopt;
  }

  std::optional<Eigen::VectorXd> shifted_minimizer = model_minimizer(model);
  if (!shifted_minimizer) return std::nullopt;
  Eigen::VectorXd minimizer = incumbent + *shifted_minimizer;

  if (evaluate.box().contains(minimizer)) {
    double value = evaluate(minimizer);
    if (value < best_value) return Improvement{minimizer, value};
    return std::nullopt;
  }

  LineSearchResult line = brent_line_search(evaluate, incumbent, incumbent_value,
                                            minimizer - incumbent, params.brent_max_iter,
                                            params.brent_tol);
  if (line.step_length > 0.0 && line.value < best_value)
    return Improvement{line.point, line.value};
  return std::nullopt;
}

Improvement vicinity_search(const Eigen::VectorXd& incumbent, double radius,
                            const TrialSet& trials, const Improvement& best, int count,
                            Evaluator& evaluate) {
  Improvement out = best;
  if (count <= 0 || trials.empty()) return out;

  TrialSet sorted = trials;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });

  const int take = std::min<int>(count, static_cast<int>(sorted.size()));
  for (int i = 0; i < take; ++i) {
    Eigen::VectorXd average = 0.5 * (best.point + sorted[i].first);
    Eigen::VectorXd direction = average - incumbent;
    double norm = direction.norm();
    if (norm <= 1e-14) continue;
    Eigen::VectorXd candidate = incumbent + (radius / norm) * direction;
    double value = evaluate(candidate);
    if (value < out.value) out = {std::move(candidate), value};
  }
  return out;
}

GradientProbe simplex_gradient_probe(const Eigen::VectorXd& incumbent, double incumbent_value,
                                     double radius, Evaluator& evaluate,
                                     const SolverParams& params) {
  GradientProbe out;
  auto nearby = evaluate.points_within(incumbent, radius * (1.0 + params.eps2));
  if (nearby.empty()) return out;

  std::vector<Eigen::VectorXd> neighbors;
  std::vector<double> values;
  neighbors.reserve(nearby.size());
  values.reserve(nearby.size());
  for (auto& [point, value] : nearby) {
    neighbors.push_back(std::move(point));
    values.push_back(value);
  }

  Eigen::VectorXd gradient;
  try {
    gradient = simplex_gradient(incumbent, neighbors, incumbent_value, values);
  } catch (const NotPoised&) {
    return out;
  }
  double norm = gradient.norm();
  if (norm <= 1e-14) return out;

  Eigen::VectorXd probe_point = incumbent - (radius / norm) * gradient;
  double probe_value = evaluate(probe_point);
  out.gradient = std::move(gradient);
  out.probe = Improvement{std::move(probe_point), probe_value};
  return out;
}

Eigen::MatrixXd scg_theta(const Eigen::VectorXd& best, const Eigen::VectorXd& incumbent,
                          const Eigen::VectorXd& gradient) {
  Eigen::VectorXd s = best - incumbent;
  double denom = s.dot(gradient);
  if (std::abs(denom) <= 1e-14) throw DegenerateTheta();
  return -(s * s.transpose()) / denom;
}

Eigen::VectorXd scg_direction(const Eigen::MatrixXd& theta, const Eigen::VectorXd& gradient,
                              const ScgMemory& memory) {
  if (memory.empty()) return -gradient;
  Eigen::VectorXd y = gradient - *memory.prev_gradient;
  const Eigen::VectorXd& s = *memory.prev_step;
  double ys = y.dot(s);
  if (std::abs(ys) <= 1e-14) return -gradient;  // restart
  double beta = (theta * y - s).dot(gradient) / ys;
  return -(theta * gradient) + beta * s;
}

ScgResult scg_step(const Eigen::VectorXd& incumbent, double incumbent_value,
                   const Improvement& best, const std::optional<Eigen::VectorXd>& gradient,
                   ScgMemory& memory, Evaluator& evaluate, const SolverParams& params) {
  ScgResult out{best, 0.0};

  // Directions are normalized so the reported step length is the Euclidean
  // distance moved, the scale the poll parameter update compares against.
  auto line_search_along = [&](Eigen::VectorXd direction) {
    double norm = direction.norm();
    if (norm <= 1e-14) return;
    direction /= norm;
    LineSearchResult line = brent_line_search(evaluate, incumbent, incumbent_value, direction,
                                              params.brent_max_iter, params.brent_tol);
    out.step_length = line.step_length;
    if (line.step_length > 0.0 && line.value < out.best.value)
      out.best = {std::move(line.point), line.value};
  };

  if (!gradient) {
    memory.reset();
    line_search_along(best.point - incumbent);
    return out;
  }

  bool searched = false;
  try {
    Eigen::MatrixXd theta = scg_theta(best.point, incumbent, *gradient);
    Eigen::VectorXd direction = scg_direction(theta, *gradient, memory);
    if (direction.dot(*gradient) < 0.0) {
      line_search_along(std::move(direction));
      searched = true;
    }
  } catch (const DegenerateTheta&) {
  }
  if (!searched) line_search_along(best.point - incumbent);

  memory.prev_gradient = *gradient;
  memory.prev_step = out.best.point - incumbent;
  return out;
}

}  // namespace bcscg
