#ifndef RADBEM_SINGULAR_HPP
#define RADBEM_SINGULAR_HPP

#include <functional>
#include <vector>

#include "radbem/quadrature.hpp"

namespace radbem {

/**
 * Error analysis of plain Gauss-Legendre quadrature applied to the
 * log-singular moments f_i(t) = ln|t - s| |t - s|^i on [-1, 1].
 * The quadrature error as a function of the singularity location s
 * has isolated zeros inside (0, 1); placing boundary source points at
 * such an offset makes the plain rule accurate for singular kernels.
 */

/// Closed-form value of the integral of ln|t-s| |t-s|^i over [-1, 1],
/// for i in {0, 1, 2} and |s| < 1.
double exact_log_moment(double s, int i);

/// Plain weighted quadrature sum for the same integrand; s must not
/// coincide with a quadrature node (the summand diverges).
double quad_log_moment(double s, int i, const QuadratureRule& rule);

/// Absolute quadrature error |exact - quadrature| for moment i.
double err_i(double s, int i, const QuadratureRule& rule);

/// Signed quadrature error of the i = 0 moment (exact minus sum).
/// Same zeros as err_i(s, 0) but with clean sign changes.
double signed_err0(double s, const QuadratureRule& rule);

/// All sign-change zeros of the signed i = 0 error on (0, 1), located
/// by bracketing on a 2000-sample grid followed by bisection.
std::vector<double> find_err0_zeros(const QuadratureRule& rule);

enum class OffsetProvenance { Tabulated, Computed };

struct OffsetChoice {
  int n = 0;
  double s_opt = 0.0;
  OffsetProvenance provenance = OffsetProvenance::Computed;
};

/// Source offset used with an n-node rule: 0.58 for n = 8 and 0.43 for
/// n = 16 (tabulated values); otherwise the computed zero nearest 0.5.
OffsetChoice optimal_offset(int n);

/**
 * High-accuracy reference for integrals over [-1, 1] whose integrand is
 * at worst log-singular at t = s. The interval is split at s and each
 * side covered by geometrically graded panels (ratio 0.15, 30 levels,
 * 24-node rule per panel) accumulating toward the singularity. Stability
 * under one extra grading level is checked; a change above 1e-9 throws.
 */
double reference_singular_integral(const std::function<double(double)>& kernel, double s);

struct ErrorProfile {
  struct Sample {
    double s;
    double err0;
    double err1;
    double err2;
  };
  int n = 0;
  std::vector<Sample> samples;         // s in (0, 1); symmetric in s by construction
  std::vector<double> zeros_of_err0;
};

ErrorProfile build_error_profile(const QuadratureRule& rule, int sample_count = 1000);

} // namespace radbem

#endif
