#include <doctest.h>

#include <cmath>
#include <random>

#include "bcscg/problems.hpp"

using bcscg::LeastSquaresProblem;
using bcscg::NoisyVariant;
using bcscg::VariantKind;
using Eigen::VectorXd;

namespace {

VectorXd uniform_point(std::mt19937& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return VectorXd::NullaryExpr(n, [&](Eigen::Index) { return u(rng); });
}

// Indices of terms that move when coordinate j is perturbed.
std::vector<int> touched_terms(const LeastSquaresProblem& problem, const VectorXd& x, int j) {
  VectorXd base = problem.terms(x);
  VectorXd bumped_x = x;
  bumped_x[j] += 0.5;
  VectorXd bumped = problem.terms(bumped_x);
  std::vector<int> touched;
  for (int i = 0; i < base.size(); ++i)
    if (base[i] != bumped[i]) touched.push_back(i);
  return touched;
}

}  // namespace

TEST_CASE("cubic chebyshev polynomial") {
  CHECK(bcscg::chebyshev_u3(0.0) == 0.0);
  CHECK(bcscg::chebyshev_u3(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(bcscg::chebyshev_u3(0.1) - (-0.296)) <= 1e-15);
}

TEST_CASE("oscillatory noise") {
  SUBCASE("value at the origin") {
    CHECK(std::abs(bcscg::psi(VectorXd::Zero(3)) - (-0.296)) <= 1e-15);
  }
  SUBCASE("bounded by one everywhere") {
    std::mt19937 rng(53);
    for (int n : {1, 2, 5, 10}) {
      for (int trial = 0; trial < 2000; ++trial) {
        VectorXd x = uniform_point(rng, n, -50.0, 50.0);
        CHECK(std::abs(bcscg::psi(x)) <= 1.0 + 1e-15);
      }
    }
  }
}

TEST_CASE("noisy variants aggregate terms") {
  LeastSquaresProblem toy;
  toy.name = "toy";
  toy.dimension = 2;
  toy.term_count = 2;
  toy.box = bcscg::BoxDomain::uniform(2, -50.0, 50.0);
  toy.terms = [](const VectorXd& x) {
    Eigen::Vector2d t(x[0] - 3.0 * x[1], x[0] + x[1]);
    return t;
  };

  SUBCASE("noise off reproduces the plain aggregates") {
    NoisyVariant smooth{toy, VariantKind::SmoothNoisy, 0.0};
    NoisyVariant piecewise{toy, VariantKind::PiecewiseSmoothNoisy, 0.0};
    Eigen::Vector2d x(1.0, 2.0);  // terms (-5, 3)
    CHECK(smooth.value(x) == doctest::Approx(34.0).epsilon(1e-15));
    CHECK(piecewise.value(x) == doctest::Approx(8.0).epsilon(1e-15));
  }
  SUBCASE("fixed-term example for the piecewise aggregate") {
    LeastSquaresProblem fixed = toy;
    fixed.terms = [](const VectorXd&) { return Eigen::Vector2d(-3.0, 4.0); };
    NoisyVariant piecewise{fixed, VariantKind::PiecewiseSmoothNoisy, 0.0};
    CHECK(piecewise.value(Eigen::Vector2d(0.0, 0.0)) == doctest::Approx(7.0));
  }
  SUBCASE("noise stays within the relative band") {
    NoisyVariant noisy{toy, VariantKind::SmoothNoisy, 1e-3};
    std::mt19937 rng(59);
    for (int trial = 0; trial < 200; ++trial) {
      VectorXd x = uniform_point(rng, 2, -50.0, 50.0);
      double clean = toy.terms(x).squaredNorm();
      double value = noisy.value(x);
      CHECK(value >= clean * (1.0 - 1e-3));
      CHECK(value <= clean * (1.0 + 1e-3));
    }
  }
}

TEST_CASE("catalog problems") {
  SUBCASE("chained rosenbrock vanishes at all ones") {
    auto problem = bcscg::make_problem("chained_rosenbrock", 8);
    CHECK(problem.terms(VectorXd::Ones(8)).norm() == 0.0);
    CHECK(problem.term_count == 14);
    CHECK(problem.box.lower[0] == -50.0);
    CHECK(problem.box.upper[7] == 50.0);
  }
  SUBCASE("chained wood vanishes at all ones") {
    auto problem = bcscg::make_problem("chained_wood", 8);
    CHECK(problem.terms(VectorXd::Ones(8)).norm() == 0.0);
    CHECK(problem.term_count == 18);
  }
  SUBCASE("freudenstein-roth root at (5, 4)") {
    auto problem = bcscg::make_problem("chained_freudenstein_roth", 2);
    CHECK(problem.terms(Eigen::Vector2d(5.0, 4.0)).norm() <= 1e-12);
  }
  SUBCASE("broyden tridiagonal touches only adjacent terms") {
    auto problem = bcscg::make_problem("broyden_tridiagonal", 10);
    std::mt19937 rng(61);
    VectorXd x = uniform_point(rng, 10, -2.0, 2.0);
    for (int j : {0, 4, 9}) {
      for (int touched : touched_terms(problem, x, j)) {
        CHECK(touched >= j - 1);
        CHECK(touched <= j + 1);
      }
      CHECK(!touched_terms(problem, x, j).empty());
    }
  }
  SUBCASE("generalized broyden is symmetric in its neighbors") {
    auto problem = bcscg::make_problem("gen_broyden_tridiagonal", 6);
    VectorXd x = VectorXd::Zero(6);
    x[2] = 1.0;
    VectorXd t = problem.terms(x);
    CHECK(t[1] == t[3]);  // -x_{i+1} and -x_{i-1} enter with the same weight
  }
  SUBCASE("singular broyden squares the generalized residuals") {
    auto gen = bcscg::make_problem("gen_broyden_tridiagonal", 7);
    auto singular = bcscg::make_problem("singular_broyden", 7);
    std::mt19937 rng(67);
    VectorXd x = uniform_point(rng, 7, -3.0, 3.0);
    VectorXd r = gen.terms(x);
    VectorXd s = singular.terms(x);
    for (int i = 0; i < 7; ++i) CHECK(s[i] == doctest::Approx(r[i] * r[i]).epsilon(1e-14));
  }
  SUBCASE("broyden banded respects its band") {
    auto problem = bcscg::make_problem("broyden_banded", 12);
    std::mt19937 rng(71);
    VectorXd x = uniform_point(rng, 12, -2.0, 2.0);
    for (int j : {0, 6, 11}) {
      for (int touched : touched_terms(problem, x, j)) {
        CHECK(touched >= j - 1);  // x_j feeds terms i with j <= i+1
        CHECK(touched <= j + 5);  // and terms i with j >= i-5
      }
    }
  }
  SUBCASE("discrete boundary value term at a hand-checked point") {
    auto problem = bcscg::make_problem("discrete_boundary_value", 1);
    double h = 0.5;
    double expected = 0.5 * h * h * std::pow(0.0 + h + 1.0, 3.0);
    CHECK(problem.terms(VectorXd::Zero(1))[0] == doctest::Approx(expected).epsilon(1e-15));
  }
  SUBCASE("unknown names and bad dimensions are rejected") {
    CHECK_THROWS_AS(bcscg::make_problem("nonexistent", 4), bcscg::UnknownProblem);
    CHECK_THROWS_AS(bcscg::make_problem("chained_wood", 5), bcscg::IncompatibleDimension);
    CHECK_THROWS_AS(bcscg::make_problem("chained_rosenbrock", 1),
                    bcscg::IncompatibleDimension);
  }
  SUBCASE("every catalog name builds") {
    for (const auto& name : bcscg::problem_names()) {
      auto problem = bcscg::make_problem(name, 8);
      CHECK(problem.terms(VectorXd::Zero(8)).size() == problem.term_count);
    }
  }
}

TEST_CASE("seeded starting points") {
  auto box = bcscg::BoxDomain::uniform(5, -50.0, 50.0);
  SUBCASE("always feasible and reproducible") {
    for (unsigned long seed : {1ul, 2ul, 99ul}) {
      VectorXd a = bcscg::random_start(box, seed);
      VectorXd b = bcscg::random_start(box, seed);
      CHECK(box.contains(a));
      CHECK((a - b).norm() == 0.0);
    }
    CHECK((bcscg::random_start(box, 1) - bcscg::random_start(box, 2)).norm() > 0.0);
  }
  SUBCASE("covers the box roughly uniformly") {
    auto line = bcscg::BoxDomain::uniform(1, -50.0, 50.0);
    double sum = 0.0;
    long below = 0;
    const int draws = 10000;
    for (int seed = 0; seed < draws; ++seed) {
      double x = bcscg::random_start(line, seed)[0];
      sum += x;
      if (x < 0.0) ++below;
    }
    CHECK(std::abs(sum / draws) <= 2.0);
    CHECK(below > draws / 3);
    CHECK(below < 2 * draws / 3);
  }
}
