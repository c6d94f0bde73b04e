#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bcscg/bench.hpp"
#include "bcscg/geometry.hpp"
#include "bcscg/models.hpp"
#include "bcscg/problems.hpp"
#include "bcscg/solver.hpp"

namespace py = pybind11;

namespace {

py::dict trace_to_dict(const bcscg::RunTrace& trace) {
  py::dict out;
  out["final_point"] = trace.final_point;
  out["final_value"] = trace.final_value;
  out["termination"] =
      trace.termination == bcscg::Termination::Budget ? "budget" : "stationary";
  out["evaluations_used"] = trace.evaluations_used;
  out["iterations"] = trace.iterations;
  out["poll_rotations"] = trace.poll_rotations;
  py::list history;
  for (const auto& [count, value] : trace.best_history)
    history.append(py::make_tuple(count, value));
  out["best_history"] = history;
  return out;
}

bcscg::SolverParams params_from_kwargs(double rho, double tau_l, double tau_u, double eps,
                                       double eps2, double vicinity_count_fraction,
                                       double initial_radius_fraction, int budget_multiplier,
                                       int brent_max_iter, double brent_tol) {
  bcscg::SolverParams params;
  params.rho = rho;
  params.tau_l = tau_l;
  params.tau_u = tau_u;
  params.eps = eps;
  params.eps2 = eps2;
  params.vicinity_count_fraction = vicinity_count_fraction;
  params.initial_radius_fraction = initial_radius_fraction;
  params.budget_multiplier = budget_multiplier;
  params.brent_max_iter = brent_max_iter;
  params.brent_tol = brent_tol;
  return params;
}

}  // namespace

PYBIND11_MODULE(bcscg, m) {
  m.doc() = "Box-constrained derivative-free optimization: direct search with "
            "equiangular poll directions, quadratic models, simplex gradients and a "
            "scaled-conjugate-gradient search step, plus the benchmark harness.";

  m.def("halton_value", &bcscg::halton_value, py::arg("index"), py::arg("base"),
        "Radical inverse of index in the given base.");

  m.def(
      "equiangular_basis",
      [](int n) {
        bcscg::DirectionBasis basis = bcscg::equiangular_basis(n);
        Eigen::MatrixXd rows(basis.directions.size(), n);
        for (std::size_t i = 0; i < basis.directions.size(); ++i)
          rows.row(i) = basis.directions[i].transpose();
        return rows;
      },
      py::arg("n"), "n+1 unit directions with pairwise dot -1/n, one per row.");

  m.def("householder_matrix", &bcscg::householder_matrix, py::arg("d"), py::arg("u"),
        "Reflection mapping unit vector d onto unit vector u.");

  m.def("chebyshev_u3", &bcscg::chebyshev_u3, py::arg("alpha"));
  m.def("psi", &bcscg::psi, py::arg("x"), "Deterministic oscillatory noise in [-1, 1].");

  m.def(
      "simplex_gradient",
      [](const Eigen::VectorXd& center, const Eigen::MatrixXd& neighbors, double center_value,
         const std::vector<double>& values) {
        std::vector<Eigen::VectorXd> points;
        points.reserve(neighbors.rows());
        for (Eigen::Index i = 0; i < neighbors.rows(); ++i)
          points.push_back(neighbors.row(i).transpose());
        return bcscg::simplex_gradient(center, points, center_value, values);
      },
      py::arg("center"), py::arg("neighbors"), py::arg("center_value"), py::arg("values"),
      "Simplex gradient at center from neighbor rows and their values.");

  m.def("convergence_test", &bcscg::convergence_test, py::arg("f0"), py::arg("fs"),
        py::arg("fL"), py::arg("tau"));
  m.def("performance_ratio", &bcscg::performance_ratio, py::arg("cost"), py::arg("best_cost"),
        py::arg("converged"));

  m.def("problem_names", &bcscg::problem_names);

  m.def(
      "problem_value",
      [](const std::string& name, const Eigen::VectorXd& x, const std::string& variant,
         double eps_f) {
        bcscg::NoisyVariant noisy{bcscg::make_problem(name, static_cast<int>(x.size())),
                                  bcscg::variant_from_string(variant), eps_f};
        return noisy.value(x);
      },
      py::arg("name"), py::arg("x"), py::arg("variant") = "smooth", py::arg("eps_f") = 1e-3,
      "Noisy objective value of a catalog problem at x.");

  m.def(
      "random_start",
      [](int n, unsigned long seed) {
        return bcscg::random_start(bcscg::BoxDomain::uniform(n, -50.0, 50.0), seed);
      },
      py::arg("n"), py::arg("seed"), "Seeded uniform start in [-50, 50]^n.");

  m.def(
      "solve",
      [](const std::string& problem, int dim, const std::string& variant, double eps_f,
         long seed, double rho, double tau_l, double tau_u, double eps, double eps2,
         double vicinity_count_fraction, double initial_radius_fraction, int budget_multiplier,
         int brent_max_iter, double brent_tol) {
        bcscg::RunRecord record = bcscg::run_single(
            problem, dim, variant, eps_f, seed,
            params_from_kwargs(rho, tau_l, tau_u, eps, eps2, vicinity_count_fraction,
                               initial_radius_fraction, budget_multiplier, brent_max_iter,
                               brent_tol));
        py::dict out;
        out["problem"] = record.problem;
        out["dimension"] = record.dimension;
        out["variant"] = record.variant;
        out["seed"] = record.seed;
        out["initial_value"] = record.initial_value;
        out["final_value"] = record.best_history.back().second;
        out["budget"] = record.budget;
        py::list history;
        for (const auto& [count, value] : record.best_history)
          history.append(py::make_tuple(count, value));
        out["best_history"] = history;
        return out;
      },
      py::arg("problem"), py::arg("dim"), py::arg("variant") = "smooth",
      py::arg("eps_f") = 1e-3, py::arg("seed") = 0, py::arg("rho") = 0.25,
      py::arg("tau_l") = 2.0, py::arg("tau_u") = 2.0, py::arg("eps") = 1e-6,
      py::arg("eps2") = 0.01, py::arg("vicinity_count_fraction") = 0.1,
      py::arg("initial_radius_fraction") = 0.1, py::arg("budget_multiplier") = 40,
      py::arg("brent_max_iter") = 20, py::arg("brent_tol") = 1e-5,
      "Solve a catalog problem from a seeded uniform start; returns the run record "
      "as a dict. Solver keyword arguments mirror SolverParams.");

  m.def(
      "minimize",
      [](const std::function<double(const Eigen::VectorXd&)>& objective,
         const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, const Eigen::VectorXd& x0,
         double rho, double tau_l, double tau_u, double eps, double eps2,
         double vicinity_count_fraction, double initial_radius_fraction, int budget_multiplier,
         int brent_max_iter, double brent_tol) {
        bcscg::BoxDomain box(lower, upper);
        bcscg::RunTrace trace = bcscg::solve(
            objective, box, x0,
            params_from_kwargs(rho, tau_l, tau_u, eps, eps2, vicinity_count_fraction,
                               initial_radius_fraction, budget_multiplier, brent_max_iter,
                               brent_tol));
        return trace_to_dict(trace);
      },
      py::arg("objective"), py::arg("lower"), py::arg("upper"), py::arg("x0"),
      py::arg("rho") = 0.25, py::arg("tau_l") = 2.0, py::arg("tau_u") = 2.0,
      py::arg("eps") = 1e-6, py::arg("eps2") = 0.01, py::arg("vicinity_count_fraction") = 0.1,
      py::arg("initial_radius_fraction") = 0.1, py::arg("budget_multiplier") = 40,
      py::arg("brent_max_iter") = 20, py::arg("brent_tol") = 1e-5,
      "Minimize a Python callable over a box from x0; returns the run trace as a dict.");
}
