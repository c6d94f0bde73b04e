#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace bcscg {

struct DegenerateReflection : std::runtime_error {
  DegenerateReflection() : std::runtime_error("reflector vector is numerically zero") {}
};

// n+1 unit directions forming a minimal positive basis of R^n: pairwise dot
// products equal -1/n and the directions sum to zero.
struct DirectionBasis {
  std::vector<Eigen::VectorXd> directions;
  int dimension = 0;
};

// Radical inverse of `index` in the given base.
double halton_value(long index, int base);

// Walks the n-dimensional Halton sequence, one prime base per coordinate.
// A cursor belongs to a single solver run; indices are never reused.
class HaltonCursor {
 public:
  explicit HaltonCursor(int n);

  int dimension() const { return static_cast<int>(bases_.size()); }
  long index() const { return index_; }
  const std::vector<int>& bases() const { return bases_; }

  // Next raw point in (0,1)^n; advances the index.
  Eigen::VectorXd next_point();

 private:
  long index_ = 1;
  std::vector<int> bases_;
};

// Draws Halton points, maps them affinely to (-1,1)^n and normalizes.
// Near-zero vectors are skipped by advancing to the next index.
Eigen::VectorXd halton_direction(HaltonCursor& cursor);

// Vertices of a regular n-simplex centered at the origin, unit length.
DirectionBasis equiangular_basis(int n);

// Reflection H = I - 2 v v^T / |v|^2 with v = d - u, mapping d onto u.
// Requires |d - u| > 1e-12; throws DegenerateReflection otherwise.
Eigen::MatrixXd householder_matrix(const Eigen::VectorXd& d, const Eigen::VectorXd& u);

// Applies the reflection taking the first basis direction onto u to every
// direction. Returns the basis unchanged when the reflector degenerates.
DirectionBasis rotate_basis(const DirectionBasis& base, const Eigen::VectorXd& u);

std::vector<int> first_primes(int n);

}  // namespace bcscg
