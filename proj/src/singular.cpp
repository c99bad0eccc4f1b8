#include "radbem/singular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radbem/errors.hpp"

namespace radbem {

namespace {

// Antiderivative building block: integral of x^i ln x over [0, a].
double log_moment_primitive(double a, int i) {
  if (a == 0.0) return 0.0;
  const double la = std::log(a);
  switch (i) {
    case 0: return a * la - a;
    case 1: return 0.5 * a * a * la - 0.25 * a * a;
    case 2: return a * a * a / 3.0 * la - a * a * a / 9.0;
    default: throw std::invalid_argument("log moment order must be 0, 1 or 2");
  }
}

double min_node_distance(double s, const QuadratureRule& rule) {
  double d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < rule.n; ++k) d = std::min(d, std::abs(rule.nodes[k] - s));
  return d;
}

} // namespace

double exact_log_moment(double s, int i) {
  if (!(std::abs(s) < 1.0)) throw std::invalid_argument("exact_log_moment: |s| must be < 1");
  return log_moment_primitive(1.0 - s, i) + log_moment_primitive(1.0 + s, i);
}

double quad_log_moment(double s, int i, const QuadratureRule& rule) {
  if (i < 0 || i > 2) throw std::invalid_argument("quad_log_moment: order must be 0, 1 or 2");
  if (min_node_distance(s, rule) < 1e-13)
    throw NumericalError("quad_log_moment: s coincides with a quadrature node");
  double sum = 0.0;
  for (int k = 0; k < rule.n; ++k) {
    const double d = std::abs(rule.nodes[k] - s);
    sum += std::log(d) * std::pow(d, i) * rule.weights[k];
  }
  return sum;
}

double err_i(double s, int i, const QuadratureRule& rule) {
  return std::abs(exact_log_moment(s, i) - quad_log_moment(s, i, rule));
}

double signed_err0(double s, const QuadratureRule& rule) {
  return exact_log_moment(s, 0) - quad_log_moment(s, 0, rule);
}

std::vector<double> find_err0_zeros(const QuadratureRule& rule) {
  if (rule.n < 4) throw std::invalid_argument("find_err0_zeros: rule must have n >= 4");

  const int grid = 2000;
  auto safe_eval = [&](double s) {
    // Nudge off node coincidences; the pole flips nothing around it.
    if (min_node_distance(s, rule) < 1e-12) s += 1e-11;
    return signed_err0(s, rule);
  };

  std::vector<double> zeros;
  double s_prev = 1.0 / grid;
  double f_prev = safe_eval(s_prev);
  for (int m = 2; m < grid; ++m) {
    const double s = static_cast<double>(m) / grid;
    const double f = safe_eval(s);
    if (f_prev == 0.0) {
      zeros.push_back(s_prev);
    } else if (f_prev * f < 0.0) {
      double a = s_prev, b = s, fa = f_prev;
      while (b - a > 1e-12) {
        const double mid = 0.5 * (a + b);
        const double fm = safe_eval(mid);
        if (fa * fm <= 0.0) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    s_prev = s;
    f_prev = f;
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

OffsetChoice optimal_offset(int n) {
  if (n < 4) throw std::invalid_argument("optimal_offset: n must be >= 4");
  if (n == 8) return {n, 0.58, OffsetProvenance::Tabulated};
  if (n == 16) return {n, 0.43, OffsetProvenance::Tabulated};

  const std::vector<double> zeros = find_err0_zeros(gauss_legendre(n));
  if (zeros.empty()) throw NumericalError("optimal_offset: no quadrature-error zeros found");
  double best = zeros.front();
  for (double z : zeros)
    if (std::abs(z - 0.5) < std::abs(best - 0.5)) best = z;
  return {n, best, OffsetProvenance::Computed};
}

double reference_singular_integral(const std::function<double(double)>& kernel, double s) {
  if (!(std::abs(s) < 1.0))
    throw std::invalid_argument("reference_singular_integral: split point must satisfy |s| < 1");

  static const QuadratureRule panel_rule = gauss_legendre(24);
  constexpr double ratio = 0.15;
  constexpr int levels = 30;

  auto integrate_panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < panel_rule.n; ++i)
      sum += panel_rule.weights[i] * kernel(mid + half * panel_rule.nodes[i]);
    return sum * half;
  };

  // One side of the split: graded panels accumulating toward s.
  // The innermost sliver below the last level carries O(w ln w) mass and
  // is dropped; grading also stops once panel edges are no longer
  // representable as doubles distinct from s.
  auto integrate_side = [&](double side_length, double direction, double& extra_level) {
    double sum = 0.0;
    extra_level = 0.0;
    if (side_length <= 0.0) return 0.0;
    double outer = side_length;
    for (int level = 0; level <= levels; ++level) {
      const double inner = outer * ratio;
      if (s + direction * inner == s || inner == outer) break;
      const double lo = std::min(s + direction * inner, s + direction * outer);
      const double hi = std::max(s + direction * inner, s + direction * outer);
      const double panel = integrate_panel(lo, hi);
      if (level == levels)
        extra_level = panel;
      else
        sum += panel;
      outer = inner;
    }
    return sum;
  };

  double extra_right = 0.0, extra_left = 0.0;
  const double right = integrate_side(1.0 - s, +1.0, extra_right);
  const double left = integrate_side(1.0 + s, -1.0, extra_left);
  const double extra = extra_right + extra_left;
  if (std::abs(extra) > 1e-9)
    throw NumericalError("reference_singular_integral: graded panels did not converge");
  return right + left + extra;
}

ErrorProfile build_error_profile(const QuadratureRule& rule, int sample_count) {
  if (sample_count < 2) throw std::invalid_argument("build_error_profile: need at least 2 samples");
  ErrorProfile profile;
  profile.n = rule.n;
  profile.samples.reserve(sample_count);
  for (int m = 1; m <= sample_count; ++m) {
    double s = static_cast<double>(m) / (sample_count + 1);
    if (min_node_distance(s, rule) < 1e-9) s += 1e-8;
    profile.samples.push_back(
        {s, err_i(s, 0, rule), err_i(s, 1, rule), err_i(s, 2, rule)});
  }
  profile.zeros_of_err0 = find_err0_zeros(rule);
  return profile;
}

} // namespace radbem
