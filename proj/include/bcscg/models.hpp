#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace bcscg {

struct SingularSystem : std::runtime_error {
  SingularSystem() : std::runtime_error("interpolation system is rank deficient") {}
};

struct NotPoised : std::runtime_error {
  NotPoised() : std::runtime_error("sample set is not poised") {}
};

// Number of quadratic monomial basis elements in R^n: (n+1)(n+2)/2.
long basis_size(int n);

// Interpolation data: a center plus p further points with values ordered as
// f(center), f(points[0]), ..., f(points[p-1]). Points must be pairwise
// distinct and values finite.
struct SampleSet {
  Eigen::VectorXd center;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;

  int dimension() const { return static_cast<int>(center.size()); }
};

// m(y) = alpha_L . (1, y_1..y_n) + alpha_Q . (y_1^2/2,..,y_n^2/2, y_1y_2, y_1y_3,.., y_{n-1}y_n)
// with the cross terms ordered row-major over i < j.
struct QuadraticModel {
  Eigen::VectorXd alpha_L;  // n+1 entries: constant, then linear
  Eigen::VectorXd alpha_Q;  // n(n+1)/2 entries: squares, then cross terms

  int dimension() const { return static_cast<int>(alpha_L.size()) - 1; }
};

// Quadratic monomial part phi_Q(y) in the model's ordering.
Eigen::VectorXd quadratic_basis(const Eigen::VectorXd& y);

// Fits the interpolation model. With more samples than basis elements the
// system is solved in the least-squares sense, with equally many it is solved
// directly, and with fewer the minimum-Frobenius-norm model is built from the
// block system [[M_Q M_Q^T, M_L], [M_L^T, 0]]. Throws SingularSystem on rank
// deficiency (relative pivot tolerance 1e-12).
QuadraticModel fit_quadratic(const SampleSet& samples);

struct ModelDerivatives {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

ModelDerivatives model_gradient_hessian(const QuadraticModel& model, const Eigen::VectorXd& x);

Eigen::MatrixXd model_hessian(const QuadraticModel& model);

// Unique stationary point when the Hessian admits a positive-definite
// Cholesky factorization; absent otherwise.
std::optional<Eigen::VectorXd> model_minimizer(const QuadraticModel& model);

// Solves Y^T g = b with Y columns (y_i - center) and b_i = f(y_i) - f(center).
// Square systems are solved directly, overdetermined ones by least squares,
// underdetermined ones by the minimum-norm least-squares solution. Throws
// NotPoised when rank(Y) < min(n, q) at relative tolerance 1e-10.
Eigen::VectorXd simplex_gradient(const Eigen::VectorXd& center,
                                 const std::vector<Eigen::VectorXd>& neighbors,
                                 double center_value, const std::vector<double>& neighbor_values);

}  // namespace bcscg
