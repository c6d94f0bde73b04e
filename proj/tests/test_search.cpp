#include <doctest.h>

#include <cmath>
#include <random>

#include "bcscg/search.hpp"

using bcscg::BoxDomain;
using bcscg::Evaluator;
using bcscg::Improvement;
using bcscg::SolverParams;
using bcscg::TrialSet;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

TEST_CASE("max feasible step") {
  BoxDomain box = BoxDomain::uniform(2, -50.0, 50.0);
  CHECK(bcscg::max_feasible_step(Vector2d(0, 0), Vector2d(1, 0), box) == doctest::Approx(50.0));
  CHECK(bcscg::max_feasible_step(Vector2d(50, 0), Vector2d(1, 0), box) == doctest::Approx(0.0));
  CHECK(bcscg::max_feasible_step(Vector2d(0, 0), Vector2d(1, 1), box) == doctest::Approx(50.0));
}

TEST_CASE("brent line search") {
  SUBCASE("finds the parabola vertex") {
    auto f = [](const VectorXd& z) { return (z[0] - 1.0) * (z[0] - 1.0); };
    Evaluator evaluate(f, BoxDomain::uniform(1, -2.0, 2.0), 100);
    auto result = bcscg::brent_line_search(evaluate, VectorXd::Zero(1), 1.0,
                                           VectorXd::Constant(1, 1.0));
    CHECK(std::abs(result.step_length - 1.0) <= 1e-5);
    CHECK(result.value <= 1e-9);
    CHECK(evaluate.evaluations_used() <= 22);
  }
  SUBCASE("monotone increasing profile returns zero") {
    auto f = [](const VectorXd& z) { return z[0]; };
    Evaluator evaluate(f, BoxDomain::uniform(1, -2.0, 2.0), 100);
    auto result = bcscg::brent_line_search(evaluate, VectorXd::Zero(1), 0.0,
                                           VectorXd::Constant(1, 1.0));
    CHECK(result.step_length == 0.0);
    CHECK(result.value == 0.0);
    CHECK(result.point[0] == 0.0);
  }
  SUBCASE("minimizer beyond the box lands on the bracket boundary") {
    auto f = [](const VectorXd& z) { return (z[0] - 100.0) * (z[0] - 100.0); };
    Evaluator evaluate(f, BoxDomain::uniform(1, -50.0, 50.0), 100);
    auto result = bcscg::brent_line_search(evaluate, VectorXd::Zero(1), 100.0 * 100.0,
                                           VectorXd::Constant(1, 1.0));
    CHECK(result.step_length >= 50.0 - 1e-2);
    CHECK(evaluate.box().contains(result.point));
  }
  SUBCASE("never evaluates outside the feasible segment") {
    // every feasible evaluation lies on the ray within [0, max step]
    auto f = [](const VectorXd& z) { return std::cos(z[0]) + 0.1 * z[0]; };
    Evaluator evaluate(f, BoxDomain::uniform(1, -1.0, 7.0), 100);
    bcscg::brent_line_search(evaluate, VectorXd::Zero(1), 1.0, VectorXd::Constant(1, 1.0));
    for (const auto& [point, value] : evaluate.feasible_evaluations()) {
      CHECK(point[0] >= 0.0);
      CHECK(point[0] <= 7.0);
    }
  }
}

TEST_CASE("quadratic model step") {
  SolverParams params;

  SUBCASE("exact model of the sphere jumps to the origin") {
    auto f = [](const VectorXd& z) { return z.squaredNorm(); };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d center(3.0, 0.0);
    TrialSet trials;
    for (Vector2d p : {Vector2d(4.0, 0.0), Vector2d(3.0, 1.0), Vector2d(2.0, 0.0),
                       Vector2d(3.0, -1.0)})
      trials.emplace_back(p, f(p));
    auto improved = bcscg::quadratic_model_step(center, f(center), trials, 4.0, evaluate, params);
    REQUIRE(improved.has_value());
    CHECK(improved->point.norm() <= 1e-8);
    CHECK(improved->value <= 1e-12);
    CHECK(evaluate.evaluations_used() == 1);  // feasible minimizer costs one evaluation
  }

  SUBCASE("linear data gives no positive-definite hessian") {
    auto f = [](const VectorXd& z) { return z[0] + 2.0 * z[1]; };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d center(0.0, 0.0);
    TrialSet trials;
    for (Vector2d p : {Vector2d(1.0, 0.0), Vector2d(0.0, 1.0), Vector2d(-1.0, 0.0),
                       Vector2d(0.0, -1.0)})
      trials.emplace_back(p, f(p));
    CHECK_FALSE(
        bcscg::quadratic_model_step(center, 0.0, trials, 0.0, evaluate, params).has_value());
  }

  SUBCASE("infeasible minimizer falls back to a feasible line search") {
    auto f = [](const VectorXd& z) {
      return (z[0] - 60.0) * (z[0] - 60.0) + z[1] * z[1];
    };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d center(40.0, 0.0);
    TrialSet trials;
    for (Vector2d p : {Vector2d(41.0, 0.0), Vector2d(40.0, 1.0), Vector2d(39.0, 0.0),
                       Vector2d(40.0, -1.0)})
      trials.emplace_back(p, f(p));
    double best = f(Vector2d(41.0, 0.0));
    auto improved =
        bcscg::quadratic_model_step(center, f(center), trials, best, evaluate, params);
    REQUIRE(improved.has_value());
    CHECK(evaluate.box().contains(improved->point));
    CHECK(improved->value < best);
    CHECK(improved->point[0] <= 50.0);
    CHECK(improved->point[0] > 49.0);  // pushed towards the active bound
    CHECK(evaluate.evaluations_used() <= params.brent_max_iter + 2);
  }

  SUBCASE("too few points skips the model") {
    auto f = [](const VectorXd& z) { return z.squaredNorm(); };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    TrialSet trials;
    trials.emplace_back(Vector2d(1.0, 0.0), 1.0);
    trials.emplace_back(Vector2d(0.0, 1.0), 1.0);
    CHECK_FALSE(bcscg::quadratic_model_step(Vector2d(0.0, 0.0), 0.0, trials, 0.0, evaluate,
                                            params)
                    .has_value());
  }
}

TEST_CASE("vicinity search") {
  auto f = [](const VectorXd& z) { return z.squaredNorm(); };

  SUBCASE("evaluates the averaged directions on the poll ball") {
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d incumbent(0.0, 0.0);
    Improvement best{Vector2d(2.0, 0.0), 4.0};
    TrialSet trials;
    trials.emplace_back(Vector2d(0.0, 2.0), 4.0);
    trials.emplace_back(Vector2d(2.0, 0.0), 4.0);
    bcscg::vicinity_search(incumbent, 1.0, trials, best, 2, evaluate);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    bool saw_diagonal = false, saw_axis = false;
    for (const auto& [point, value] : evaluate.feasible_evaluations()) {
      if ((point - Vector2d(inv_sqrt2, inv_sqrt2)).norm() <= 1e-12) saw_diagonal = true;
      if ((point - Vector2d(1.0, 0.0)).norm() <= 1e-12) saw_axis = true;
    }
    CHECK(saw_diagonal);
    CHECK(saw_axis);
    CHECK(evaluate.evaluations_used() == 2);
  }

  SUBCASE("zero count is a no-op") {
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Improvement best{Vector2d(2.0, 0.0), 4.0};
    TrialSet trials;
    trials.emplace_back(Vector2d(0.0, 2.0), 4.0);
    Improvement out = bcscg::vicinity_search(Vector2d(0.0, 0.0), 1.0, trials, best, 0, evaluate);
    CHECK(out.value == best.value);
    CHECK(evaluate.evaluations_used() == 0);
  }

  SUBCASE("averages collapsing onto the incumbent are skipped") {
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Improvement best{Vector2d(1.0, 0.0), 1.0};
    TrialSet trials;
    trials.emplace_back(Vector2d(-1.0, 0.0), 1.0);  // average with best is the incumbent
    Improvement out = bcscg::vicinity_search(Vector2d(0.0, 0.0), 1.0, trials, best, 1, evaluate);
    CHECK(out.value == best.value);
    CHECK(evaluate.evaluations_used() == 0);
  }
}

TEST_CASE("simplex gradient probe") {
  SolverParams params;

  SUBCASE("linear objective yields the exact gradient and a probe point") {
    auto f = [](const VectorXd& z) { return 3.0 * z[0] - 2.0 * z[1]; };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d x(1.0, 1.0);
    double fx = evaluate(x);
    evaluate(Vector2d(1.5, 1.0));
    evaluate(Vector2d(1.0, 1.5));
    auto probe = bcscg::simplex_gradient_probe(x, fx, 1.0, evaluate, params);
    REQUIRE(probe.gradient.has_value());
    CHECK((*probe.gradient - Vector2d(3.0, -2.0)).cwiseAbs().maxCoeff() <= 1e-10);
    REQUIRE(probe.probe.has_value());
    Vector2d expected = x - Vector2d(3.0, -2.0) / std::sqrt(13.0);
    CHECK((probe.probe->point - expected).norm() <= 1e-12);
  }

  SUBCASE("no cached neighbors, no probe") {
    auto f = [](const VectorXd& z) { return z.squaredNorm(); };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d x(0.0, 0.0);
    double fx = evaluate(x);
    auto probe = bcscg::simplex_gradient_probe(x, fx, 1.0, evaluate, params);
    CHECK_FALSE(probe.gradient.has_value());
    CHECK_FALSE(probe.probe.has_value());
  }

  SUBCASE("collinear neighbors are not poised") {
    auto f = [](const VectorXd& z) { return z[0]; };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d x(0.0, 0.0);
    double fx = evaluate(x);
    evaluate(Vector2d(0.5, 0.5));
    evaluate(Vector2d(0.25, 0.25));
    auto probe = bcscg::simplex_gradient_probe(x, fx, 1.0, evaluate, params);
    CHECK_FALSE(probe.gradient.has_value());
    CHECK_FALSE(probe.probe.has_value());
  }
}

TEST_CASE("scg scaling matrix") {
  SUBCASE("rank-one scaled outer product") {
    MatrixXd theta = bcscg::scg_theta(Vector2d(1.0, 0.0), Vector2d(0.0, 0.0),
                                      Vector2d(-2.0, 0.0));
    CHECK(theta(0, 0) == doctest::Approx(0.5));
    CHECK(theta(0, 1) == doctest::Approx(0.0));
    CHECK(theta(1, 0) == doctest::Approx(0.0));
    CHECK(theta(1, 1) == doctest::Approx(0.0));
  }
  SUBCASE("orthogonal step and gradient degenerate") {
    CHECK_THROWS_AS(bcscg::scg_theta(Vector2d(1.0, 0.0), Vector2d(0.0, 0.0),
                                     Vector2d(0.0, 1.0)),
                    bcscg::DegenerateTheta);
  }
  SUBCASE("second axis") {
    MatrixXd theta = bcscg::scg_theta(Vector2d(0.0, 1.0), Vector2d(0.0, 0.0),
                                      Vector2d(0.0, -1.0));
    CHECK(theta(1, 1) == doctest::Approx(1.0));
    CHECK(theta(0, 0) == doctest::Approx(0.0));
  }
}

TEST_CASE("scg direction") {
  SUBCASE("first iteration is steepest descent") {
    bcscg::ScgMemory memory;
    VectorXd d = bcscg::scg_direction(MatrixXd::Identity(2, 2), Vector2d(1.0, 2.0), memory);
    CHECK((d - Vector2d(-1.0, -2.0)).norm() == 0.0);
  }
  SUBCASE("worked two-dimensional update") {
    bcscg::ScgMemory memory;
    memory.prev_gradient = Vector2d(-2.0, 0.0);  // y = g_new - prev = (1,0)
    memory.prev_step = Vector2d(0.5, 0.0);
    VectorXd d = bcscg::scg_direction(MatrixXd::Identity(2, 2), Vector2d(-1.0, 0.0), memory);
    CHECK((d - Vector2d(0.5, 0.0)).norm() <= 1e-14);
  }
  SUBCASE("degenerate curvature pair restarts") {
    bcscg::ScgMemory memory;
    memory.prev_gradient = Vector2d(1.0, 0.0);  // y = 0 with g_new = prev
    memory.prev_step = Vector2d(0.5, 0.0);
    VectorXd d = bcscg::scg_direction(MatrixXd::Identity(2, 2), Vector2d(1.0, 0.0), memory);
    CHECK((d - Vector2d(-1.0, 0.0)).norm() == 0.0);
  }
  SUBCASE("beta matches its defining formula") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
      int n = 2 + static_cast<int>(rng() % 4);
      auto draw = [&] { return VectorXd::NullaryExpr(n, [&](Eigen::Index) { return u(rng); }); };
      MatrixXd theta = MatrixXd::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return u(rng); });
      VectorXd g = draw(), prev_g = draw(), s = draw();
      VectorXd y = g - prev_g;
      if (std::abs(y.dot(s)) <= 1e-10) continue;
      bcscg::ScgMemory memory;
      memory.prev_gradient = prev_g;
      memory.prev_step = s;
      VectorXd d = bcscg::scg_direction(theta, g, memory);
      double beta = (theta * y - s).dot(g) / y.dot(s);
      VectorXd expected = -(theta * g) + beta * s;
      CHECK((d - expected).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, expected.norm()));
    }
  }
}

TEST_CASE("scg step") {
  SolverParams params;

  SUBCASE("descent direction drives the sphere towards the origin") {
    auto f = [](const VectorXd& z) { return z.squaredNorm(); };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d x(4.0, 0.0);
    double fx = evaluate(x);
    Improvement best{Vector2d(3.5, 0.0), f(Vector2d(3.5, 0.0))};
    bcscg::ScgMemory memory;
    auto result = bcscg::scg_step(x, fx, best, Vector2d(8.0, 0.0), memory, evaluate, params);
    CHECK(result.best.value <= 1e-6);
    CHECK(std::abs(result.step_length - 4.0) <= 1e-3);
    REQUIRE_FALSE(memory.empty());
    CHECK((*memory.prev_gradient - Vector2d(8.0, 0.0)).norm() == 0.0);
    CHECK((*memory.prev_step - (result.best.point - x)).norm() == 0.0);
  }

  SUBCASE("non-descent direction falls back to the greedy ray") {
    auto f = [](const VectorXd& z) {
      return (z[0] - 3.0) * (z[0] - 3.0) + z[1] * z[1];
    };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d x(0.0, 0.0);
    double fx = evaluate(x);
    Improvement best{Vector2d(1.0, 0.0), f(Vector2d(1.0, 0.0))};
    // memory chosen so beta * s overwhelms -theta g and d points uphill,
    // forcing the line search onto the best - incumbent ray
    bcscg::ScgMemory memory;
    memory.prev_gradient = Vector2d(5.0, 0.0);
    memory.prev_step = Vector2d(-1.0, 0.0);
    auto result = bcscg::scg_step(x, fx, best, Vector2d(6.0, 0.0), memory, evaluate, params);
    CHECK((result.best.point - Vector2d(3.0, 0.0)).norm() <= 1e-3);
    CHECK(result.best.value <= 1e-6);
  }

  SUBCASE("coincident best and incumbent with no gradient do nothing") {
    auto f = [](const VectorXd& z) { return z.squaredNorm(); };
    Evaluator evaluate(f, BoxDomain::uniform(2, -50.0, 50.0), 100);
    Vector2d x(1.0, 1.0);
    double fx = evaluate(x);
    Improvement best{x, fx};
    bcscg::ScgMemory memory;
    memory.prev_gradient = Vector2d(1.0, 0.0);
    memory.prev_step = Vector2d(0.5, 0.0);
    auto result = bcscg::scg_step(x, fx, best, std::nullopt, memory, evaluate, params);
    CHECK(result.step_length == 0.0);
    CHECK((result.best.point - x).norm() == 0.0);
    CHECK(memory.empty());  // gradient unavailable resets the memory
    CHECK(evaluate.evaluations_used() == 1);
  }
}
