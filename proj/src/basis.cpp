#include "radbem/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "radbem/errors.hpp"

namespace radbem {

BasisKind BasisKind::gaussian(double eps2) { return {BasisTag::Gaussian, eps2, 1}; }
BasisKind BasisKind::multiquadric(double eps2) { return {BasisTag::Multiquadric, eps2, 1}; }
BasisKind BasisKind::inverse_multiquadric(double eps2) {
  return {BasisTag::InverseMultiquadric, eps2, 1};
}
BasisKind BasisKind::inverse_quadric(double eps2) { return {BasisTag::InverseQuadric, eps2, 1}; }
BasisKind BasisKind::thin_plate_spline(int exponent) {
  return {BasisTag::ThinPlateSpline, 1.0, exponent};
}
BasisKind BasisKind::polyharmonic_spline(int exponent) {
  return {BasisTag::PolyharmonicSpline, 1.0, exponent};
}
BasisKind BasisKind::local_c0() { return {BasisTag::LocalC0, 1.0, 1}; }
BasisKind BasisKind::local_c2() { return {BasisTag::LocalC2, 1.0, 1}; }
BasisKind BasisKind::linear_element() { return {BasisTag::LinearElement, 1.0, 1}; }

double rbf_value(const BasisKind& kind, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("rbf_value: radius must be non-negative");
  switch (kind.tag) {
    case BasisTag::Gaussian:
      return std::exp(-kind.eps2 * r * r);
    case BasisTag::Multiquadric:
      return std::sqrt(1.0 + kind.eps2 * r * r);
    case BasisTag::InverseMultiquadric:
      return 1.0 / std::sqrt(1.0 + kind.eps2 * r * r);
    case BasisTag::InverseQuadric:
      return 1.0 / (1.0 + kind.eps2 * r * r);
    case BasisTag::ThinPlateSpline:
      if (kind.exponent < 1) throw std::invalid_argument("thin plate spline exponent must be >= 1");
      return r == 0.0 ? 0.0 : std::pow(r, 2 * kind.exponent) * std::log(r);
    case BasisTag::PolyharmonicSpline:
      if (kind.exponent < 1) throw std::invalid_argument("polyharmonic exponent must be >= 1");
      return std::pow(r, 2 * kind.exponent + 1);
    case BasisTag::LocalC0: {
      const double m = std::max(1.0 - r, 0.0);
      return m * m;
    }
    case BasisTag::LocalC2: {
      const double m = std::max(1.0 - r, 0.0);
      return m * m * m * m * (1.0 + 4.0 * r);
    }
    case BasisTag::LinearElement:
      throw std::invalid_argument("rbf_value: linear element basis is not radial");
  }
  throw std::logic_error("rbf_value: unknown basis tag");
}

double default_shape_parameter(int source_count) {
  if (source_count < 2) throw std::invalid_argument("default_shape_parameter: need K >= 2");
  return static_cast<double>(source_count) * source_count / 1000.0;
}

SourceSet place_sources(const BoundaryMesh& mesh, double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("place_sources: offset must lie strictly inside (0, 1)");
  SourceSet set;
  set.offset = s;
  set.points.reserve(2 * mesh.size());
  set.host_element.reserve(2 * mesh.size());
  set.local_t.reserve(2 * mesh.size());
  for (const Element& e : mesh.elements) {
    for (double t : {-s, s}) {
      set.points.push_back(element_point(e, t));
      set.host_element.push_back(e.index);
      set.local_t.push_back(t);
    }
  }
  return set;
}

double linear_basis_value(int k, double t, double s) {
  if (k != 1 && k != 2) throw std::invalid_argument("linear_basis_value: k must be 1 or 2");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("linear_basis_value: s must be in (0, 1)");
  if (!(t >= -1.0 && t <= 1.0)) throw std::invalid_argument("linear_basis_value: t must be in [-1, 1]");
  return k == 1 ? -(t - s) / (2.0 * s) : (t + s) / (2.0 * s);
}

BasisMatrices build_matrices(const BasisKind& kind, const SourceSet& sources,
                             const GlobalQuadrature& gq) {
  const int K = sources.size();
  const int total = gq.size();
  if (K == 0 || total == 0) throw std::invalid_argument("build_matrices: empty inputs");

  BasisMatrices bm;
  bm.Phi = Eigen::MatrixXd::Zero(total, K);

  if (kind.tag == BasisTag::LinearElement) {
    // Hat pair in the local coordinate of each host element; the local
    // node coordinates are those of the rule that generated gq.
    const double s = sources.offset;
    const int n = gq.nodes_per_element;
    const QuadratureRule rule = gauss_legendre(n);
    for (int g = 0; g < total; ++g) {
      const int j = gq.element_of[g];
      const double t = rule.nodes[g % n];
      bm.Phi(g, 2 * j) = linear_basis_value(1, t, s);
      bm.Phi(g, 2 * j + 1) = linear_basis_value(2, t, s);
    }
    bm.Psi = Eigen::MatrixXd::Identity(K, K);
    return bm;
  }

  for (int g = 0; g < total; ++g)
    for (int k = 0; k < K; ++k)
      bm.Phi(g, k) = rbf_value(kind, (gq.points.col(g) - sources.points[k]).norm());

  bm.Psi.resize(K, K);
  for (int a = 0; a < K; ++a)
    for (int k = 0; k < K; ++k)
      bm.Psi(a, k) = rbf_value(kind, (sources.points[a] - sources.points[k]).norm());
  return bm;
}

Eigen::VectorXd rbf_interpolate(const BasisKind& kind, const std::vector<Point2>& centers,
                                const Eigen::VectorXd& values) {
  const int K = static_cast<int>(centers.size());
  if (K == 0) throw std::invalid_argument("rbf_interpolate: no centers");
  if (values.size() != K)
    throw std::invalid_argument("rbf_interpolate: values length must match centers");
  for (int a = 0; a < K; ++a)
    for (int b = a + 1; b < K; ++b)
      if ((centers[a] - centers[b]).norm() == 0.0)
        throw std::invalid_argument("rbf_interpolate: centers must be pairwise distinct");

  Eigen::MatrixXd A(K, K);
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b)
      A(a, b) = rbf_value(kind, (centers[a] - centers[b]).norm());

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (min_pivot < 1e-300)
    throw NumericalError("rbf_interpolate: singular collocation matrix", cond);
  if (cond > 1e16)
    throw NumericalError("rbf_interpolate: collocation matrix too ill-conditioned", cond);

  Eigen::VectorXd gamma = lu.solve(values);
  gamma += lu.solve(values - A * gamma);

  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-30);
  if ((A * gamma - values).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw NumericalError("rbf_interpolate: interpolation residual too large", cond);
  return gamma;
}

} // namespace radbem
