#include "radbem/kernels.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "radbem/errors.hpp"
#include "radbem/quadrature.hpp"

namespace radbem {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kTwoPi = 2.0 * M_PI;

// --- small-argument branch (x <= 2): ascending series -------------------

double i0_series(double x) {
  const double z = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= z / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double i1_series(double x) {
  const double z = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= z / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 0.5 * x * sum;
}

double k0_series(double x) {
  const double z = 0.25 * x * x;
  double term = 1.0, harmonic = 0.0, sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= z / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    sum += term * harmonic;
    if (term < 1e-18) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0_series(x) + sum;
}

double k1_series(double x) {
  const double z = 0.25 * x * x;
  double term = 1.0, hk = 0.0, hk1 = 1.0;
  double sum = (hk + hk1 - 2.0 * kEulerGamma) * term;
  for (int k = 1; k < 60; ++k) {
    term *= z / (static_cast<double>(k) * (k + 1));
    hk += 1.0 / k;
    hk1 += 1.0 / (k + 1);
    sum += (hk + hk1 - 2.0 * kEulerGamma) * term;
    if (term < 1e-18) break;
  }
  return std::log(0.5 * x) * i1_series(x) + 1.0 / x - 0.25 * x * sum;
}

// --- large-argument branch (x > 2): Chebyshev fits ----------------------
//
// The scaled functions e^x sqrt(x) K_nu(x) are smooth on [2, inf); they
// are sampled once through the integral representation
//   K0(x) = 2 e^{-x} int_0^inf e^{-2 x sinh^2(t/2)} dt
// rewritten with w = sinh(t/2) sqrt(2x):
//   e^x sqrt(x) K0(x) = sqrt(2) int_0^inf e^{-w^2} (1 + w^2/(2x))^{-1/2} dw
// and fitted by Chebyshev interpolation on two regimes, in x on [2, 8]
// and in 8/x on (0, 1]. Evaluation is then a Clenshaw recurrence.

double scaled_k0_slow(double x) {
  static const QuadratureRule rule = gauss_legendre(48);
  static const std::array<double, 4> edges = {0.0, 2.0, 5.0, 8.5};
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < rule.n; ++i) {
      const double w = mid + half * rule.nodes[i];
      sum += half * rule.weights[i] * std::exp(-w * w) / std::sqrt(1.0 + w * w / (2.0 * x));
    }
  }
  return std::sqrt(2.0) * sum;
}

double scaled_k1_slow(double x) {
  static const QuadratureRule rule = gauss_legendre(48);
  static const std::array<double, 4> edges = {0.0, 2.0, 5.0, 8.5};
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < rule.n; ++i) {
      const double w = mid + half * rule.nodes[i];
      sum += half * rule.weights[i] * std::exp(-w * w) * (1.0 + w * w / x) /
             std::sqrt(1.0 + w * w / (2.0 * x));
    }
  }
  return std::sqrt(2.0) * sum;
}

struct ChebFit {
  std::array<double, 64> coeff{};
  int terms = 0;
};

// Interpolates f at the degree-64 Chebyshev points of the variable
// xi in [-1, 1]. The trailing coefficients sit on the sample-noise
// floor (~1e-15) and must be trimmed: summing dozens of noise
// coefficients in Clenshaw would cost ~1e-14 of accuracy.
ChebFit cheb_fit(const std::function<double(double)>& f) {
  constexpr int m = 64;
  std::array<double, m> samples;
  for (int j = 0; j < m; ++j) samples[j] = f(std::cos(M_PI * (j + 0.5) / m));
  ChebFit fit;
  for (int k = 0; k < m; ++k) {
    double c = 0.0;
    for (int j = 0; j < m; ++j) c += samples[j] * std::cos(M_PI * k * (j + 0.5) / m);
    fit.coeff[k] = 2.0 * c / m;
  }
  const double noise_floor = 1.5e-15 * std::abs(fit.coeff[0]);
  fit.terms = m;
  while (fit.terms > 1 && std::abs(fit.coeff[fit.terms - 1]) < noise_floor) --fit.terms;
  return fit;
}

double cheb_eval(const ChebFit& fit, double xi) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = fit.terms - 1; k >= 1; --k) {
    const double b0 = 2.0 * xi * b1 - b2 + fit.coeff[k];
    b2 = b1;
    b1 = b0;
  }
  return xi * b1 - b2 + 0.5 * fit.coeff[0];
}

struct ScaledTables {
  ChebFit k0_mid, k0_far, k1_mid, k1_far;
};

const ScaledTables& tables() {
  static const ScaledTables t = [] {
    ScaledTables s;
    // mid regime: x in [2, 8], xi = (x - 5) / 3
    s.k0_mid = cheb_fit([](double xi) { return scaled_k0_slow(5.0 + 3.0 * xi); });
    s.k1_mid = cheb_fit([](double xi) { return scaled_k1_slow(5.0 + 3.0 * xi); });
    // far regime: v = 8/x in (0, 1], xi = 2v - 1
    s.k0_far = cheb_fit([](double xi) { return scaled_k0_slow(16.0 / (xi + 1.0)); });
    s.k1_far = cheb_fit([](double xi) { return scaled_k1_slow(16.0 / (xi + 1.0)); });
    return s;
  }();
  return t;
}

double scaled_k(const ChebFit& mid, const ChebFit& far, double x) {
  if (x <= 8.0) return cheb_eval(mid, (x - 5.0) / 3.0);
  return cheb_eval(far, 2.0 * (8.0 / x) - 1.0);
}

void check_positive(double x, const char* name) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(name) + ": argument must be positive");
}

} // namespace

double bessel_k0(double x) {
  check_positive(x, "bessel_k0");
  if (x <= 2.0) return k0_series(x);
  return scaled_k(tables().k0_mid, tables().k0_far, x) * std::exp(-x) / std::sqrt(x);
}

double bessel_k1(double x) {
  check_positive(x, "bessel_k1");
  if (x <= 2.0) return k1_series(x);
  return scaled_k(tables().k1_mid, tables().k1_far, x) * std::exp(-x) / std::sqrt(x);
}

namespace detail {
double bessel_i0(double x) { return i0_series(std::abs(x)); }
double bessel_i1(double x) { return x < 0 ? -i1_series(-x) : i1_series(x); }
} // namespace detail

PdeCoefficients PdeCoefficients::advection_diffusion(double h1, double h2, double lambda) {
  PdeCoefficients pde;
  pde.h = Point2(h1, h2);
  pde.lambda = lambda;
  if (!pde.is_laplace() && !(pde.h.squaredNorm() / 4.0 - lambda > 0.0))
    throw std::invalid_argument(
        "PdeCoefficients: oscillatory regime |h|^2/4 - lambda <= 0 is not supported");
  return pde;
}

double PdeCoefficients::mu() const {
  const double m2 = h.squaredNorm() / 4.0 - lambda;
  if (!(m2 > 0.0)) throw std::invalid_argument("PdeCoefficients::mu: not in modified-Bessel regime");
  return std::sqrt(m2);
}

double fundamental_u(const PdeCoefficients& pde, const Point2& r) {
  const double rho = r.norm();
  if (!(rho > 0.0)) throw std::invalid_argument("fundamental_u: r must be nonzero");
  if (pde.is_laplace()) return -std::log(rho) / kTwoPi;
  return std::exp(0.5 * pde.h.dot(r)) * bessel_k0(pde.mu() * rho) / kTwoPi;
}

double fundamental_v(const PdeCoefficients& pde, const Point2& r, const Point2& normal) {
  const double rho = r.norm();
  if (!(rho > 0.0)) throw std::invalid_argument("fundamental_v: r must be nonzero");
  const double rn = r.dot(normal);
  if (pde.is_laplace()) return -rn / (kTwoPi * rho * rho);
  const double m = pde.mu();
  const double hn = pde.h.dot(normal);
  return std::exp(0.5 * pde.h.dot(r)) *
         (0.5 * hn * bessel_k0(m * rho) - m * bessel_k1(m * rho) * rn / rho) / kTwoPi;
}

double adjoint_residual(const PdeCoefficients& pde,
                        const std::function<double(const Point2&)>& f) {
  std::mt19937 rng(19937);
  std::uniform_real_distribution<double> box(-1.5, 1.5);
  constexpr double step = 1e-4;

  double worst = 0.0;
  int accepted = 0;
  while (accepted < 50) {
    const Point2 r(box(rng), box(rng));
    const double rho = r.norm();
    if (rho < 0.3 || rho > 1.5) continue;
    ++accepted;

    const double c = f(r);
    const double xp = f(r + Point2(step, 0)), xm = f(r - Point2(step, 0));
    const double yp = f(r + Point2(0, step)), ym = f(r - Point2(0, step));
    const double lap = (xp + xm + yp + ym - 4.0 * c) / (step * step);
    const Point2 grad((xp - xm) / (2.0 * step), (yp - ym) / (2.0 * step));
    worst = std::max(worst, std::abs(lap - pde.h.dot(grad) + pde.lambda * c));
  }
  return worst;
}

double verify_fundamental(const PdeCoefficients& pde) {
  return adjoint_residual(pde, [&](const Point2& r) { return fundamental_u(pde, r); });
}

} // namespace radbem
