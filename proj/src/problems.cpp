#include "bcscg/problems.hpp"

#include <cmath>
#include <random>

namespace bcscg {

VariantKind variant_from_string(const std::string& s) {
  if (s == "smooth") return VariantKind::SmoothNoisy;
  if (s == "piecewise") return VariantKind::PiecewiseSmoothNoisy;
  throw std::invalid_argument("unknown variant: " + s);
}

std::string to_string(VariantKind kind) {
  return kind == VariantKind::SmoothNoisy ? "smooth" : "piecewise";
}

double chebyshev_u3(double alpha) { return alpha * (4.0 * alpha * alpha - 3.0); }

double psi(const Eigen::VectorXd& x) {
  double norm1 = x.lpNorm<1>();
  double norm_inf = x.lpNorm<Eigen::Infinity>();
  double norm2 = x.norm();
  double psi0 = 0.9 * std::sin(100.0 * norm1) * std::cos(100.0 * norm_inf) +
                0.1 * std::cos(norm2);
  return chebyshev_u3(psi0);
}

double evaluate(const NoisyVariant& variant, const Eigen::VectorXd& x) {
  Eigen::VectorXd terms = variant.base.terms(x);
  double aggregate = variant.kind == VariantKind::SmoothNoisy ? terms.squaredNorm()
                                                              : terms.lpNorm<1>();
  return (1.0 + variant.eps_f * psi(x)) * aggregate;
}

double NoisyVariant::value(const Eigen::VectorXd& x) const { return evaluate(*this, x); }

Objective NoisyVariant::objective() const {
  NoisyVariant copy = *this;
  return [copy](const Eigen::VectorXd& x) { return copy.value(x); };
}

namespace {

void require_dimension(bool ok, const std::string& name, const std::string& constraint) {
  if (!ok) throw IncompatibleDimension(name + " requires " + constraint);
}

// Residual shared by the Broyden tridiagonal family; neighbors outside the
// range count as zero.
double broyden_residual(const Eigen::VectorXd& x, int i, double right_weight) {
  const int n = static_cast<int>(x.size());
  double left = i > 0 ? x[i - 1] : 0.0;
  double right = i + 1 < n ? x[i + 1] : 0.0;
  return (3.0 - 2.0 * x[i]) * x[i] - left - right_weight * right + 1.0;
}

Eigen::VectorXd chained_rosenbrock_terms(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd t(2 * (n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    t[2 * i] = 10.0 * (x[i] * x[i] - x[i + 1]);
    t[2 * i + 1] = x[i] - 1.0;
  }
  return t;
}

Eigen::VectorXd chained_wood_terms(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const double sqrt90 = std::sqrt(90.0);
  const double sqrt10 = std::sqrt(10.0);
  Eigen::VectorXd t(3 * (n - 2));
  int k = 0;
  for (int i = 0; i + 3 < n; i += 2) {
    t[k++] = 10.0 * (x[i + 1] - x[i] * x[i]);
    t[k++] = 1.0 - x[i];
    t[k++] = sqrt90 * (x[i + 3] - x[i + 2] * x[i + 2]);
    t[k++] = 1.0 - x[i + 2];
    t[k++] = sqrt10 * (x[i + 1] + x[i + 3] - 2.0);
    t[k++] = (x[i + 1] - x[i + 3]) / sqrt10;
  }
  return t;
}

Eigen::VectorXd discrete_boundary_value_terms(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const double h = 1.0 / (n + 1.0);
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) {
    double left = i > 0 ? x[i - 1] : 0.0;
    double right = i + 1 < n ? x[i + 1] : 0.0;
    double shifted = x[i] + (i + 1) * h + 1.0;
    t[i] = 2.0 * x[i] - left - right + 0.5 * h * h * shifted * shifted * shifted;
  }
  return t;
}

Eigen::VectorXd chained_freudenstein_roth_terms(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd t(2 * (n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    double y = x[i + 1];
    t[2 * i] = x[i] + y * ((5.0 - y) * y - 2.0) - 13.0;
    t[2 * i + 1] = x[i] + y * ((1.0 + y) * y - 14.0) - 29.0;
  }
  return t;
}

Eigen::VectorXd broyden_banded_terms(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) {
    double neighbor_sum = 0.0;
    for (int j = std::max(0, i - 5); j <= std::min(n - 1, i + 1); ++j) {
      if (j == i) continue;
      neighbor_sum += x[j] * (1.0 + x[j]);
    }
    t[i] = x[i] * (2.0 + 5.0 * x[i] * x[i]) + 1.0 - neighbor_sum;
  }
  return t;
}

}  // namespace

LeastSquaresProblem make_problem(const std::string& name, int n) {
  if (n < 1) throw IncompatibleDimension("dimension must be positive");

  LeastSquaresProblem problem;
  problem.name = name;
  problem.dimension = n;
  problem.box = BoxDomain::uniform(n, -50.0, 50.0);

  if (name == "chained_rosenbrock") {
    require_dimension(n >= 2, name, "n >= 2");
    problem.term_count = 2 * (n - 1);
    problem.terms = chained_rosenbrock_terms;
  } else if (name == "broyden_tridiagonal") {
    problem.term_count = n;
    problem.terms = [](const Eigen::VectorXd& x) {
      Eigen::VectorXd t(x.size());
      for (int i = 0; i < x.size(); ++i) t[i] = broyden_residual(x, i, 2.0);
      return t;
    };
  } else if (name == "gen_broyden_tridiagonal") {
    problem.term_count = n;
    problem.terms = [](const Eigen::VectorXd& x) {
      Eigen::VectorXd t(x.size());
      for (int i = 0; i < x.size(); ++i) t[i] = broyden_residual(x, i, 1.0);
      return t;
    };
  } else if (name == "chained_wood") {
    require_dimension(n >= 4 && n % 2 == 0, name, "even n >= 4");
    problem.term_count = 3 * (n - 2);
    problem.terms = chained_wood_terms;
  } else if (name == "discrete_boundary_value") {
    problem.term_count = n;
    problem.terms = discrete_boundary_value_terms;
  } else if (name == "chained_freudenstein_roth") {
    require_dimension(n >= 2, name, "n >= 2");
    problem.term_count = 2 * (n - 1);
    problem.terms = chained_freudenstein_roth_terms;
  } else if (name == "singular_broyden") {
    problem.term_count = n;
    problem.terms = [](const Eigen::VectorXd& x) {
      Eigen::VectorXd t(x.size());
      for (int i = 0; i < x.size(); ++i) {
        double r = broyden_residual(x, i, 1.0);
        t[i] = r * r;
      }
      return t;
    };
  } else if (name == "broyden_banded") {
    problem.term_count = n;
    problem.terms = broyden_banded_terms;
  } else {
    throw UnknownProblem(name);
  }
  return problem;
}

std::vector<std::string> problem_names() {
  return {"chained_rosenbrock",      "broyden_tridiagonal",
          "gen_broyden_tridiagonal", "chained_wood",
          "discrete_boundary_value", "chained_freudenstein_roth",
          "singular_broyden",        "broyden_banded"};
}

Eigen::VectorXd random_start(const BoxDomain& box, unsigned long seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd x(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * u01;
  }
  return x;
}

}  // namespace bcscg
