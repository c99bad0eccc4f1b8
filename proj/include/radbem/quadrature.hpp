#ifndef RADBEM_QUADRATURE_HPP
#define RADBEM_QUADRATURE_HPP

#include <Eigen/Dense>
#include <vector>

#include "radbem/geometry.hpp"

namespace radbem {

/// Gauss-Legendre rule on [-1, 1]: strictly increasing nodes,
/// positive weights summing to 2, exact through degree 2n-1.
struct QuadratureRule {
  int n = 0;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Builds the n-node rule by Newton iteration on the Legendre
/// polynomial from Chebyshev initial guesses; 1 <= n <= 64.
QuadratureRule gauss_legendre(int n);

/**
 * Quadrature points, weights and outward normals for a whole mesh,
 * concatenated element by element. Weights carry the element Jacobian:
 * l_j/2 per straight element, |dq/dtheta| (theta1-theta0)/2 for curved
 * ones, so that summing f over the points integrates f over the boundary.
 */
struct GlobalQuadrature {
  Eigen::Matrix2Xd points;   // 2 x (n N)
  Eigen::VectorXd weights;   // n N
  Eigen::Matrix2Xd normals;  // 2 x (n N)
  std::vector<int> element_of;
  int nodes_per_element = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

GlobalQuadrature global_quadrature(const BoundaryMesh& mesh, const QuadratureRule& rule);

/// Dot product of boundary samples with the global weights.
double integrate_boundary(const Eigen::VectorXd& values, const GlobalQuadrature& gq);

} // namespace radbem

#endif
