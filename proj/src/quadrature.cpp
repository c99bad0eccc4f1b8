#include "radbem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "radbem/errors.hpp"

namespace radbem {

namespace {

// Legendre P_n and P_n' at x via the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = (n == 0) ? 1.0 : p1;
  dp = (n == 0) ? 0.0 : n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: n must be in [1, 64]");

  QuadratureRule rule;
  rule.n = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev guess for the i-th root in descending order.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p, dp;
    int iter = 0;
    for (;; ++iter) {
      if (iter >= 100) throw NumericalError("gauss_legendre: Newton iteration did not converge");
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    double p, dp;
    legendre_pair(n, 0.0, p, dp);
    rule.nodes[half] = 0.0;
    rule.weights[half] = 2.0 / (dp * dp);
  }
  return rule;
}

GlobalQuadrature global_quadrature(const BoundaryMesh& mesh, const QuadratureRule& rule) {
  if (mesh.size() == 0) throw std::invalid_argument("global_quadrature: empty mesh");
  if (rule.n < 1) throw std::invalid_argument("global_quadrature: invalid rule");

  const int total = mesh.size() * rule.n;
  GlobalQuadrature gq;
  gq.points.resize(2, total);
  gq.normals.resize(2, total);
  gq.weights.resize(total);
  gq.element_of.resize(total);
  gq.nodes_per_element = rule.n;

  int g = 0;
  for (const Element& e : mesh.elements) {
    for (int i = 0; i < rule.n; ++i, ++g) {
      const double t = rule.nodes[i];
      gq.points.col(g) = element_point(e, t);
      gq.normals.col(g) = outward_normal(e, t);
      gq.element_of[g] = e.index;
      if (e.shape == ElementShape::Straight) {
        gq.weights[g] = 0.5 * e.length * rule.weights[i];
      } else {
        const double theta = 0.5 * (e.theta0 + e.theta1) + 0.5 * (e.theta1 - e.theta0) * t;
        const double r = flower_radius(theta);
        const double dr = flower_radius_deriv(theta);
        const double jac = std::hypot(r, dr);
        gq.weights[g] = jac * 0.5 * (e.theta1 - e.theta0) * rule.weights[i];
      }
    }
  }
  return gq;
}

double integrate_boundary(const Eigen::VectorXd& values, const GlobalQuadrature& gq) {
  if (gq.size() == 0) throw std::invalid_argument("integrate_boundary: empty quadrature");
  if (values.size() != gq.weights.size())
    throw std::invalid_argument("integrate_boundary: values length does not match quadrature size");
  return values.dot(gq.weights);
}

} // namespace radbem
