#ifndef RADBEM_BASIS_HPP
#define RADBEM_BASIS_HPP

#include <Eigen/Dense>
#include <vector>

#include "radbem/geometry.hpp"
#include "radbem/quadrature.hpp"

namespace radbem {

enum class BasisTag {
  Gaussian,
  Multiquadric,
  InverseMultiquadric,
  InverseQuadric,
  ThinPlateSpline,
  PolyharmonicSpline,
  LocalC0,
  LocalC2,
  LinearElement,
};

/**
 * Boundary basis selector. The four infinitely smooth radial kinds
 * carry the shape parameter eps2 = epsilon^2; the spline kinds carry
 * an integer exponent (r^{2n} ln r and r^{2n+1}); the compactly
 * supported kinds use the raw distance with support radius 1.
 * LinearElement is the per-element hat pair in the local coordinate.
 */
struct BasisKind {
  BasisTag tag = BasisTag::Gaussian;
  double eps2 = 1.0;
  int exponent = 1;

  static BasisKind gaussian(double eps2);
  static BasisKind multiquadric(double eps2);
  static BasisKind inverse_multiquadric(double eps2);
  static BasisKind inverse_quadric(double eps2);
  static BasisKind thin_plate_spline(int exponent = 1);
  static BasisKind polyharmonic_spline(int exponent = 1);
  static BasisKind local_c0();
  static BasisKind local_c2();
  static BasisKind linear_element();

  bool is_radial() const { return tag != BasisTag::LinearElement; }
};

/// Radial profile phi(r); r must be >= 0.
double rbf_value(const BasisKind& kind, double r);

/// Shape parameter rule eps^2 = K^2 / 1000 for K boundary sources.
double default_shape_parameter(int source_count);

/**
 * K = 2N boundary source points, one pair per element at local
 * coordinates -s and +s. Element index and local coordinate are kept
 * so that bases and boundary conditions can work element-wise.
 */
struct SourceSet {
  std::vector<Point2> points;
  std::vector<int> host_element;
  std::vector<double> local_t;
  double offset = 0.0;

  int size() const { return static_cast<int>(points.size()); }
};

SourceSet place_sources(const BoundaryMesh& mesh, double s);

/// Hat values of the element pair: k = 1 peaks at t = -s, k = 2 at +s.
double linear_basis_value(int k, double t, double s);

/// Phi: basis evaluated at the global quadrature points (nN x K).
/// Psi: basis evaluated at the source points themselves (K x K).
struct BasisMatrices {
  Eigen::MatrixXd Phi;
  Eigen::MatrixXd Psi;
};

BasisMatrices build_matrices(const BasisKind& kind, const SourceSet& sources,
                             const GlobalQuadrature& gq);

/// Solves the radial collocation system phi(|x_k - x_j|) gamma = values.
/// Throws NumericalError (with the condition estimate) on breakdown.
Eigen::VectorXd rbf_interpolate(const BasisKind& kind, const std::vector<Point2>& centers,
                                const Eigen::VectorXd& values);

} // namespace radbem

#endif
