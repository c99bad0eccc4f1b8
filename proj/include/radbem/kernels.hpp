#ifndef RADBEM_KERNELS_HPP
#define RADBEM_KERNELS_HPP

#include <functional>

#include "radbem/geometry.hpp"

namespace radbem {

/// Modified Bessel functions of the second kind, order 0 and 1.
/// Relative accuracy better than 1e-14 over (0, inf); x <= 0 throws.
double bessel_k0(double x);
double bessel_k1(double x);

namespace detail {
/// Regular modified Bessel functions by ascending series (used by the
/// K0/K1 small-argument branch and by cross-check identities).
double bessel_i0(double x);
double bessel_i1(double x);
} // namespace detail

/**
 * Coefficients of the scalar PDE  lap(u) + h . grad(u) + lambda u = 0.
 * Only the non-oscillatory regime |h|^2/4 - lambda > 0 is admitted
 * (plus the pure Laplace case h = 0, lambda = 0), so the fundamental
 * solution stays in the modified-Bessel family.
 */
struct PdeCoefficients {
  Point2 h = Point2::Zero();
  double lambda = 0.0;

  static PdeCoefficients laplace() { return {}; }
  static PdeCoefficients advection_diffusion(double h1, double h2, double lambda);

  bool is_laplace() const { return h.x() == 0.0 && h.y() == 0.0 && lambda == 0.0; }
  double mu() const;  // sqrt(|h|^2/4 - lambda)
};

/// Fundamental solution u*(r) of the adjoint operator
/// lap - h . grad + lambda acting in r = q - p:
///   Laplace: -ln|r| / 2 pi;  general: exp(h.r/2) K0(mu |r|) / 2 pi.
double fundamental_u(const PdeCoefficients& pde, const Point2& r);

/// Normal derivative v* = du*/dn taken at the field point.
double fundamental_v(const PdeCoefficients& pde, const Point2& r, const Point2& normal);

/// Max |lap(f) - h . grad(f) + lambda f| over 50 sample points with
/// 0.3 < |r| < 1.5, by second-order finite differences (step 1e-4).
/// Guards the sign convention of the fundamental solution.
double adjoint_residual(const PdeCoefficients& pde,
                        const std::function<double(const Point2&)>& f);

/// adjoint_residual applied to fundamental_u; below 1e-4 for the
/// shipped convention, order one for a flipped exponential sign.
double verify_fundamental(const PdeCoefficients& pde);

} // namespace radbem

#endif
