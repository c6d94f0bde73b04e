#include "bcscg/models.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/LU>

namespace bcscg {

long basis_size(int n) {
  if (n < 1) throw std::invalid_argument("basis_size: dimension must be positive");
  return static_cast<long>(n + 1) * (n + 2) / 2;
}

Eigen::VectorXd quadratic_basis(const Eigen::VectorXd& y) {
  const int n = static_cast<int>(y.size());
  Eigen::VectorXd phi(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) phi[i] = 0.5 * y[i] * y[i];
  int k = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) phi[k++] = y[i] * y[j];
  return phi;
}

namespace {

// Rows of the sample set including the center, in value order.
std::vector<const Eigen::VectorXd*> all_points(const SampleSet& s) {
  std::vector<const Eigen::VectorXd*> pts;
  pts.reserve(1 + s.points.size());
  pts.push_back(&s.center);
  for (const auto& p : s.points) pts.push_back(&p);
  return pts;
}

QuadraticModel solve_direct_or_least_squares(const SampleSet& s, long rows, long cols) {
  const int n = s.dimension();
  Eigen::MatrixXd m(rows, cols);
  Eigen::VectorXd f(rows);
  auto pts = all_points(s);
  for (long i = 0; i < rows; ++i) {
    const Eigen::VectorXd& y = *pts[i];
    m(i, 0) = 1.0;
    m.row(i).segment(1, n) = y.transpose();
    m.row(i).tail(cols - n - 1) = quadratic_basis(y).transpose();
    f[i] = s.values[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) throw SingularSystem();
  Eigen::VectorXd alpha = qr.solve(f);

  QuadraticModel model;
  model.alpha_L = alpha.head(n + 1);
  model.alpha_Q = alpha.tail(cols - n - 1);
  return model;
}

QuadraticModel solve_minimum_frobenius_norm(const SampleSet& s, long rows) {
  const int n = s.dimension();
  auto pts = all_points(s);

  Eigen::MatrixXd y(rows, n);
  Eigen::MatrixXd ml(rows, n + 1);
  Eigen::VectorXd f(rows);
  for (long i = 0; i < rows; ++i) {
    y.row(i) = pts[i]->transpose();
    ml(i, 0) = 1.0;
    ml.row(i).tail(n) = pts[i]->transpose();
    f[i] = s.values[i];
  }

  // Gram matrix M_Q M_Q^T without forming M_Q: with the halved-squares basis,
  // phi_Q(u) . phi_Q(v) = (u.v)^2 / 2 - sum_i u_i^2 v_i^2 / 4.
  Eigen::MatrixXd dots = y * y.transpose();
  Eigen::MatrixXd squares = y.cwiseProduct(y);
  Eigen::MatrixXd gram =
      0.5 * dots.cwiseProduct(dots) - 0.25 * (squares * squares.transpose());

  const long size = rows + n + 1;
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(size, size);
  block.topLeftCorner(rows, rows) = gram;
  block.topRightCorner(rows, n + 1) = ml;
  block.bottomLeftCorner(n + 1, rows) = ml.transpose();

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
  rhs.head(rows) = f;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw SingularSystem();
  Eigen::VectorXd solution = lu.solve(rhs);

  QuadraticModel model;
  model.alpha_L = solution.tail(n + 1);
  model.alpha_Q = Eigen::VectorXd::Zero(n * (n + 1) / 2);
  for (long i = 0; i < rows; ++i) model.alpha_Q += solution[i] * quadratic_basis(*pts[i]);
  return model;
}

}  // namespace

QuadraticModel fit_quadratic(const SampleSet& samples) {
  const int n = samples.dimension();
  const long rows = 1 + static_cast<long>(samples.points.size());
  if (static_cast<long>(samples.values.size()) != rows)
    throw std::invalid_argument("fit_quadratic: values must match points plus center");
  const long cols = basis_size(n);

  // rows = p+1 samples against cols = q+1 basis elements.
  if (rows >= cols) return solve_direct_or_least_squares(samples, rows, cols);
  return solve_minimum_frobenius_norm(samples, rows);
}

Eigen::MatrixXd model_hessian(const QuadraticModel& model) {
  const int n = model.dimension();
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = model.alpha_Q[i];
  int k = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = model.alpha_Q[k];
      h(j, i) = model.alpha_Q[k];
      ++k;
    }
  return h;
}

ModelDerivatives model_gradient_hessian(const QuadraticModel& model, const Eigen::VectorXd& x) {
  const int n = model.dimension();
  ModelDerivatives out;
  out.hessian = model_hessian(model);
  Eigen::VectorXd hx = out.hessian * x;
  out.gradient = model.alpha_L.tail(n) + hx;
  out.value = model.alpha_L[0] + model.alpha_L.tail(n).dot(x) + 0.5 * x.dot(hx);
  return out;
}

std::optional<Eigen::VectorXd> model_minimizer(const QuadraticModel& model) {
  const int n = model.dimension();
  Eigen::MatrixXd h = model_hessian(model);
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) return std::nullopt;
  Eigen::VectorXd g0 = model.alpha_L.tail(n);
  return llt.solve(-g0);
}

Eigen::VectorXd simplex_gradient(const Eigen::VectorXd& center,
                                 const std::vector<Eigen::VectorXd>& neighbors,
                                 double center_value, const std::vector<double>& neighbor_values) {
  const int n = static_cast<int>(center.size());
  const int q = static_cast<int>(neighbors.size());
  if (q < 1 || neighbor_values.size() != neighbors.size())
    throw std::invalid_argument("simplex_gradient: need matching neighbors and values");

  Eigen::MatrixXd differences(q, n);
  Eigen::VectorXd b(q);
  for (int i = 0; i < q; ++i) {
    differences.row(i) = (neighbors[i] - center).transpose();
    b[i] = neighbor_values[i] - center_value;
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(differences);
  cod.setThreshold(1e-10);
  if (cod.rank() < std::min(n, q)) throw NotPoised();
  return cod.solve(b);
}

}  // namespace bcscg
