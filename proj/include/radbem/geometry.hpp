#ifndef RADBEM_GEOMETRY_HPP
#define RADBEM_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

namespace radbem {

using Point2 = Eigen::Vector2d;

/// Star-shaped test boundary r(theta) = 1 + 0.25 cos(4 theta).
double flower_radius(double theta);
double flower_radius_deriv(double theta);

enum class ElementShape { Straight, Curved };

/**
 * One boundary element. Straight elements are the segment [a, b];
 * curved elements follow the flower radius over [theta0, theta1],
 * with a, b the endpoints on the curve. The local coordinate
 * t in [-1, 1] maps affinely onto the segment or the theta interval,
 * t = -1 at a and t = +1 at b.
 */
struct Element {
  int index = 0;
  Point2 a = Point2::Zero();
  Point2 b = Point2::Zero();
  ElementShape shape = ElementShape::Straight;
  double theta0 = 0.0;  // curved only
  double theta1 = 0.0;  // curved only
  double length = 0.0;  // chord length (straight) or arc length (curved)
};

/**
 * Closed boundary discretization, traversed anticlockwise.
 * vertices has N+1 entries with vertices[N] == vertices[0];
 * consecutive elements share one endpoint.
 */
struct BoundaryMesh {
  std::vector<Point2> vertices;
  std::vector<Element> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

/// Square [-w, w]^2 split into N straight elements of equal length.
/// N must be >= 4 and divisible by 4 so that the corners are element
/// endpoints (source points then always sit on smooth boundary).
BoundaryMesh discretize_square(int element_count, double half_width);

/// Flower boundary split into N curved elements on a uniform theta
/// partition. Arc lengths are computed with a 16-node Gauss rule.
BoundaryMesh discretize_flower(int element_count);

/// Point on an element at local coordinate t in [-1, 1].
Point2 element_point(const Element& e, double t);

/// Unit outward normal at local coordinate t (anticlockwise mesh).
Point2 outward_normal(const Element& e, double t);

/// Scales each point towards the origin; factor must be in (0, 1).
std::vector<Point2> interior_points(const std::vector<Point2>& sources, double factor);

double signed_polygon_area(const std::vector<Point2>& vertices);

/// Winding-number test against a sampled boundary polygon. Points
/// closer than tol to the boundary are not considered interior.
bool point_inside(const BoundaryMesh& mesh, const Point2& p, double tol = 1e-9);

} // namespace radbem

#endif
