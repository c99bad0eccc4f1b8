#include "radbem/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "radbem/errors.hpp"
#include "radbem/quadrature.hpp"

namespace radbem {

double flower_radius(double theta) { return 1.0 + 0.25 * std::cos(4.0 * theta); }

double flower_radius_deriv(double theta) { return -std::sin(4.0 * theta); }

namespace {

Point2 flower_point(double theta) {
  const double r = flower_radius(theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

Point2 flower_tangent(double theta) {
  const double r = flower_radius(theta);
  const double dr = flower_radius_deriv(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  return {dr * c - r * s, dr * s + r * c};
}

double element_theta(const Element& e, double t) {
  return 0.5 * (e.theta0 + e.theta1) + 0.5 * (e.theta1 - e.theta0) * t;
}

void check_local_coordinate(double t) {
  if (!(t >= -1.0 && t <= 1.0))
    throw std::invalid_argument("local coordinate t must lie in [-1, 1]");
}

} // namespace

BoundaryMesh discretize_square(int element_count, double half_width) {
  if (element_count < 4 || element_count % 4 != 0)
    throw std::invalid_argument(
        "square discretization requires N >= 4 divisible by 4 so corners are element endpoints");
  if (!(half_width > 0.0)) throw std::invalid_argument("half_width must be positive");

  const int per_side = element_count / 4;
  const double w = half_width;
  const Point2 corners[4] = {{-w, -w}, {w, -w}, {w, w}, {-w, w}};

  BoundaryMesh mesh;
  mesh.vertices.reserve(element_count + 1);
  for (int side = 0; side < 4; ++side) {
    const Point2& a = corners[side];
    const Point2& b = corners[(side + 1) % 4];
    for (int k = 0; k < per_side; ++k)
      mesh.vertices.push_back(a + (b - a) * (static_cast<double>(k) / per_side));
  }
  mesh.vertices.push_back(corners[0]);

  mesh.elements.reserve(element_count);
  for (int j = 0; j < element_count; ++j) {
    Element e;
    e.index = j;
    e.a = mesh.vertices[j];
    e.b = mesh.vertices[j + 1];
    e.shape = ElementShape::Straight;
    e.length = (e.b - e.a).norm();
    mesh.elements.push_back(e);
  }
  return mesh;
}

BoundaryMesh discretize_flower(int element_count) {
  if (element_count < 8) throw std::invalid_argument("flower discretization requires N >= 8");

  const QuadratureRule rule = gauss_legendre(16);
  const double two_pi = 2.0 * M_PI;

  BoundaryMesh mesh;
  mesh.vertices.reserve(element_count + 1);
  for (int j = 0; j < element_count; ++j)
    mesh.vertices.push_back(flower_point(two_pi * j / element_count));
  mesh.vertices.push_back(mesh.vertices.front());

  mesh.elements.reserve(element_count);
  for (int j = 0; j < element_count; ++j) {
    Element e;
    e.index = j;
    e.shape = ElementShape::Curved;
    e.theta0 = two_pi * j / element_count;
    e.theta1 = two_pi * (j + 1) / element_count;
    e.a = mesh.vertices[j];
    e.b = mesh.vertices[j + 1];

    const double half = 0.5 * (e.theta1 - e.theta0);
    double arc = 0.0;
    for (int i = 0; i < rule.n; ++i) {
      const double theta = element_theta(e, rule.nodes[i]);
      arc += rule.weights[i] * flower_tangent(theta).norm();
    }
    e.length = arc * half;
    mesh.elements.push_back(e);
  }
  return mesh;
}

Point2 element_point(const Element& e, double t) {
  check_local_coordinate(t);
  if (e.shape == ElementShape::Straight)
    return 0.5 * (e.b + e.a) + 0.5 * (e.b - e.a) * t;
  return flower_point(element_theta(e, t));
}

Point2 outward_normal(const Element& e, double t) {
  check_local_coordinate(t);
  Point2 tangent;
  if (e.shape == ElementShape::Straight)
    tangent = e.b - e.a;
  else
    tangent = flower_tangent(element_theta(e, t));
  const double len = tangent.norm();
  if (!(len > 1e-300)) throw NumericalError("zero-length tangent in outward_normal");
  return Point2(tangent.y(), -tangent.x()) / len;
}

std::vector<Point2> interior_points(const std::vector<Point2>& sources, double factor) {
  if (!(factor > 0.0 && factor < 1.0))
    throw std::invalid_argument("interior scaling factor must lie in (0, 1)");
  std::vector<Point2> out;
  out.reserve(sources.size());
  for (const Point2& p : sources) out.push_back(factor * p);
  return out;
}

double signed_polygon_area(const std::vector<Point2>& vertices) {
  double twice = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    twice += vertices[i].x() * vertices[i + 1].y() - vertices[i + 1].x() * vertices[i].y();
  return 0.5 * twice;
}

bool point_inside(const BoundaryMesh& mesh, const Point2& p, double tol) {
  // Sample the boundary (curved elements need more than the vertices).
  std::vector<Point2> poly;
  const int samples_per_element = 8;
  for (const Element& e : mesh.elements) {
    const int m = (e.shape == ElementShape::Straight) ? 1 : samples_per_element;
    for (int k = 0; k < m; ++k) poly.push_back(element_point(e, -1.0 + 2.0 * k / m));
  }
  poly.push_back(poly.front());

  // Distance guard: near-boundary points are not classified as interior.
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const Point2 d = poly[i + 1] - poly[i];
    const double len2 = d.squaredNorm();
    double u = len2 > 0 ? (p - poly[i]).dot(d) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    if ((p - (poly[i] + u * d)).norm() < tol) return false;
  }

  // Winding number by signed horizontal-ray crossings.
  int winding = 0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[i + 1];
    const double cross = (b.x() - a.x()) * (p.y() - a.y()) - (p.x() - a.x()) * (b.y() - a.y());
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && cross > 0) ++winding;
    } else {
      if (b.y() <= p.y() && cross < 0) --winding;
    }
  }
  return winding != 0;
}

} // namespace radbem
