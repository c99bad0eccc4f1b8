#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "radbem/geometry.hpp"
#include "radbem/quadrature.hpp"

using namespace radbem;

namespace {

// Independent arc-length oracle: composite Gauss panels over theta with
// one refinement step as a self-check.
double flower_perimeter_oracle() {
  const QuadratureRule rule = gauss_legendre(32);
  auto integrate = [&](int panels) {
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = 2.0 * M_PI * p / panels, hi = 2.0 * M_PI * (p + 1) / panels;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int i = 0; i < rule.n; ++i) {
        const double theta = mid + half * rule.nodes[i];
        sum += half * rule.weights[i] *
               std::hypot(flower_radius(theta), flower_radius_deriv(theta));
      }
    }
    return sum;
  };
  const double coarse = integrate(16), fine = integrate(32);
  REQUIRE(std::abs(fine - coarse) < 1e-12);
  return fine;
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("square with one element per side") {
  const BoundaryMesh mesh = discretize_square(4, 1.0);
  CHECK(mesh.size() == 4);
  for (const Element& e : mesh.elements) CHECK(e.length == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(mesh.vertices.size() == 5);
  CHECK(mesh.vertices[0].isApprox(Point2(-1, -1)));
  CHECK(mesh.vertices[1].isApprox(Point2(1, -1)));
  CHECK(mesh.vertices[2].isApprox(Point2(1, 1)));
  CHECK(mesh.vertices[3].isApprox(Point2(-1, 1)));
  CHECK(mesh.vertices[4].isApprox(mesh.vertices[0]));
}

TEST_CASE("square N=8 has elements of length 1") {
  const BoundaryMesh mesh = discretize_square(8, 1.0);
  CHECK(mesh.size() == 8);
  for (const Element& e : mesh.elements) CHECK(e.length == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("square rejects N not divisible by 4") {
  CHECK_THROWS_AS(discretize_square(6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(discretize_square(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(discretize_square(8, -1.0), std::invalid_argument);
}

TEST_CASE("square orientation and perimeter") {
  for (int n : {4, 8, 40}) {
    const BoundaryMesh mesh = discretize_square(n, 1.0);
    CHECK(signed_polygon_area(mesh.vertices) == doctest::Approx(4.0).epsilon(1e-13));
    double perimeter = 0.0;
    for (const Element& e : mesh.elements) perimeter += e.length;
    CHECK(perimeter == doctest::Approx(8.0).epsilon(1e-13));
  }
}

TEST_CASE("flower boundary points") {
  CHECK(flower_radius(0.0) == doctest::Approx(1.25));
  CHECK(flower_radius(M_PI / 4) == doctest::Approx(0.75));
  const BoundaryMesh mesh = discretize_flower(8);
  CHECK(mesh.vertices[0].isApprox(Point2(1.25, 0.0), 1e-14));
  CHECK(mesh.vertices[1].isApprox(Point2(0.75 / std::sqrt(2.0), 0.75 / std::sqrt(2.0)), 1e-14));
  CHECK(element_point(mesh.elements[0], -1.0).isApprox(Point2(1.25, 0.0), 1e-14));
}

TEST_CASE("flower rejects tiny meshes") {
  CHECK_THROWS_AS(discretize_flower(7), std::invalid_argument);
}

TEST_CASE("flower total arc length matches the quadrature oracle") {
  // Frozen from the oracle below; the perimeter does not depend on how
  // many elements the boundary is split into.
  const double frozen = 7.654796689710372;
  const double oracle = flower_perimeter_oracle();
  CHECK(oracle == doctest::Approx(frozen).epsilon(1e-12));
  const BoundaryMesh mesh = discretize_flower(8);
  double total = 0.0;
  for (const Element& e : mesh.elements) total += e.length;
  CHECK(total == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("element_point on straight elements") {
  Element e;
  e.a = Point2(0, 0);
  e.b = Point2(2, 0);
  e.length = 2.0;
  CHECK(element_point(e, 0.0).isApprox(Point2(1, 0)));
  CHECK(element_point(e, 1.0).isApprox(Point2(2, 0)));
  CHECK(element_point(e, -1.0).isApprox(Point2(0, 0)));
  CHECK_THROWS_AS(element_point(e, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(element_point(e, -1.0 - 1e-9), std::invalid_argument);
}

TEST_CASE("element endpoints equal element_point at +-1") {
  for (const BoundaryMesh& mesh : {discretize_square(12, 1.0), discretize_flower(12)}) {
    for (const Element& e : mesh.elements) {
      CHECK((element_point(e, -1.0) - e.a).norm() < 1e-13);
      CHECK((element_point(e, 1.0) - e.b).norm() < 1e-13);
    }
  }
}

TEST_CASE("outward normals on the square") {
  const BoundaryMesh mesh = discretize_square(4, 1.0);
  CHECK(outward_normal(mesh.elements[0], 0.0).isApprox(Point2(0, -1)));  // bottom
  CHECK(outward_normal(mesh.elements[1], 0.0).isApprox(Point2(1, 0)));   // right
  CHECK(outward_normal(mesh.elements[2], 0.0).isApprox(Point2(0, 1)));   // top
  CHECK(outward_normal(mesh.elements[3], 0.0).isApprox(Point2(-1, 0)));  // left
}

TEST_CASE("flower normal at theta = 0 is radial") {
  const BoundaryMesh mesh = discretize_flower(8);
  // r'(0) = 0, so the tangent is purely angular and the normal radial.
  CHECK(outward_normal(mesh.elements[0], -1.0).isApprox(Point2(1, 0), 1e-14));
}

TEST_CASE("normals are unit length and point outward") {
  for (const BoundaryMesh& mesh : {discretize_square(16, 1.0), discretize_flower(16)}) {
    for (const Element& e : mesh.elements) {
      for (double t : {-1.0, 0.0, 1.0}) {
        const Point2 n = outward_normal(e, t);
        CHECK(std::abs(n.norm() - 1.0) < 1e-14);
        CHECK(n.dot(element_point(e, t)) > 0.0);  // star-shaped domains
      }
    }
  }
}

TEST_CASE("degenerate element is rejected") {
  Element e;
  e.a = e.b = Point2(1, 1);
  CHECK_THROWS(outward_normal(e, 0.0));
}

TEST_CASE("interior point scaling") {
  const std::vector<Point2> sources = {Point2(1, 1), Point2(-1, 0.3)};
  const std::vector<Point2> inner = interior_points(sources, 0.5);
  CHECK(inner[0].isApprox(Point2(0.5, 0.5)));
  CHECK(inner[1].isApprox(Point2(-0.5, 0.15)));
  CHECK(interior_points({}, 0.5).empty());
  CHECK_THROWS_AS(interior_points(sources, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(interior_points(sources, 1.0), std::invalid_argument);
}

TEST_CASE("winding-number classification") {
  const BoundaryMesh square = discretize_square(16, 1.0);
  CHECK(point_inside(square, Point2(0, 0)));
  CHECK(point_inside(square, Point2(0.9, -0.9)));
  CHECK_FALSE(point_inside(square, Point2(2, 2)));
  CHECK_FALSE(point_inside(square, Point2(1.0, 0.0)));          // on the boundary
  CHECK_FALSE(point_inside(square, Point2(1.0 - 1e-12, 0.0)));  // within tolerance

  const BoundaryMesh flower = discretize_flower(32);
  CHECK(point_inside(flower, Point2(0, 0)));
  CHECK(point_inside(flower, Point2(0.6, 0.0)));
  CHECK_FALSE(point_inside(flower, Point2(1.26, 0.0)));
  // Concave lobe gap: the radius at pi/4 is 0.75, so 0.9 along that ray is outside.
  CHECK_FALSE(point_inside(flower, Point2(0.9 / std::sqrt(2.0), 0.9 / std::sqrt(2.0))));
}

}
