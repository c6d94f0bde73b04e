#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bcscg/box.hpp"
#include "bcscg/evaluation.hpp"

namespace bcscg {

struct UnknownProblem : std::runtime_error {
  explicit UnknownProblem(const std::string& name)
      : std::runtime_error("unknown problem: " + name) {}
};

struct IncompatibleDimension : std::runtime_error {
  explicit IncompatibleDimension(const std::string& what) : std::runtime_error(what) {}
};

// Sum-of-terms test problem over a box: the smooth objective aggregates the
// terms as sum of squares, the piecewise-smooth one as sum of absolute values.
struct LeastSquaresProblem {
  std::string name;
  int dimension = 0;
  int term_count = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> terms;
  BoxDomain box;
};

enum class VariantKind { SmoothNoisy, PiecewiseSmoothNoisy };

VariantKind variant_from_string(const std::string& s);
std::string to_string(VariantKind kind);

struct NoisyVariant {
  LeastSquaresProblem base;
  VariantKind kind = VariantKind::SmoothNoisy;
  double eps_f = 1e-3;

  double value(const Eigen::VectorXd& x) const;
  Objective objective() const;
};

// Cubic Chebyshev polynomial U3(a) = a (4a^2 - 3).
double chebyshev_u3(double alpha);

// Deterministic oscillatory noise in [-1, 1]:
// psi(x) = U3(0.9 sin(100|x|_1) cos(100|x|_inf) + 0.1 cos(|x|_2)).
double psi(const Eigen::VectorXd& x);

// (1 + eps_f * psi(x)) times the variant's aggregate of the terms.
double evaluate(const NoisyVariant& variant, const Eigen::VectorXd& x);

// Builds a catalog problem on the box [-50, 50]^n. Throws UnknownProblem for
// unregistered names and IncompatibleDimension when n violates the problem's
// structure (e.g. chained problems need n >= 2).
LeastSquaresProblem make_problem(const std::string& name, int n);

std::vector<std::string> problem_names();

// Uniform draw over the box from a mt19937_64 stream; coordinates use the
// top 53 bits of each draw, so a seed reproduces the same point everywhere.
Eigen::VectorXd random_start(const BoxDomain& box, unsigned long seed);

}  // namespace bcscg
