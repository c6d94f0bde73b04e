#include "bcscg/geometry.hpp"

#include <cmath>

namespace bcscg {

std::vector<int> first_primes(int n) {
  std::vector<int> primes;
  primes.reserve(n);
  int candidate = 2;
  while (static_cast<int>(primes.size()) < n) {
    bool is_prime = true;
    for (int p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes;
}

double halton_value(long index, int base) {
  if (index < 1 || base < 2) throw std::invalid_argument("halton_value: index >= 1, base >= 2");
  double result = 0.0;
  double f = 1.0;
  long i = index;
  while (i > 0) {
    f /= base;
    result += f * static_cast<double>(i % base);
    i /= base;
  }
  return result;
}

HaltonCursor::HaltonCursor(int n) {
  if (n < 1) throw std::invalid_argument("HaltonCursor: dimension must be positive");
  bases_ = first_primes(n);
}

Eigen::VectorXd HaltonCursor::next_point() {
  Eigen::VectorXd h(dimension());
  for (int j = 0; j < dimension(); ++j) h[j] = halton_value(index_, bases_[j]);
  ++index_;
  return h;
}

Eigen::VectorXd halton_direction(HaltonCursor& cursor) {
  for (;;) {
    Eigen::VectorXd v = 2.0 * cursor.next_point() - Eigen::VectorXd::Ones(cursor.dimension());
    double norm = v.norm();
    if (norm >= 1e-12) return v / norm;
  }
}

Eigen::MatrixXd householder_matrix(const Eigen::VectorXd& d, const Eigen::VectorXd& u) {
  Eigen::VectorXd v = d - u;
  double norm2 = v.squaredNorm();
  if (std::sqrt(norm2) <= 1e-12) throw DegenerateReflection();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d.size(), d.size());
  h.noalias() -= (2.0 / norm2) * v * v.transpose();
  return h;
}

DirectionBasis equiangular_basis(int n) {
  if (n < 1) throw std::invalid_argument("equiangular_basis: dimension must be positive");
  // Regular-simplex vertices: e_i minus the centroid in R^{n+1} live in the
  // zero-sum hyperplane; a reflection sending (1,..,1)/sqrt(n+1) to e_{n+1}
  // maps that hyperplane onto the first n coordinates.
  Eigen::VectorXd ones = Eigen::VectorXd::Constant(n + 1, 1.0 / std::sqrt(n + 1.0));
  Eigen::MatrixXd h = householder_matrix(ones, Eigen::VectorXd::Unit(n + 1, n));

  DirectionBasis basis;
  basis.dimension = n;
  basis.directions.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n + 1, -1.0 / (n + 1.0));
    v[i] += 1.0;
    v.normalize();
    Eigen::VectorXd d = (h * v).head(n);
    d.normalize();
    basis.directions.push_back(std::move(d));
  }
  return basis;
}

DirectionBasis rotate_basis(const DirectionBasis& base, const Eigen::VectorXd& u) {
  Eigen::MatrixXd h;
  try {
    h = householder_matrix(base.directions.front(), u);
  } catch (const DegenerateReflection&) {
    return base;
  }
  DirectionBasis rotated;
  rotated.dimension = base.dimension;
  rotated.directions.reserve(base.directions.size());
  for (const Eigen::VectorXd& d : base.directions) rotated.directions.emplace_back(h * d);
  return rotated;
}

}  // namespace bcscg
