#include "radbem/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "radbem/errors.hpp"
#include "radbem/singular.hpp"

namespace radbem {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// u* and v* at once, sharing the Bessel evaluations.
struct KernelPair {
  double u;
  double v;
};

KernelPair kernel_pair(const PdeCoefficients& pde, const Point2& r, const Point2& n) {
  const double rho = r.norm();
  const double rn = r.dot(n);
  if (pde.is_laplace()) {
    const double u = -std::log(rho) / kTwoPi;
    const double v = -rn / (kTwoPi * rho * rho);
    return {u, v};
  }
  const double m = pde.mu();
  const double e = std::exp(0.5 * pde.h.dot(r));
  const double k0 = bessel_k0(m * rho);
  const double k1 = bessel_k1(m * rho);
  const double hn = pde.h.dot(n);
  return {e * k0 / kTwoPi, e * (0.5 * hn * k0 - m * k1 * rn / rho) / kTwoPi};
}

} // namespace

InfluenceMatrices assemble_influence(const std::vector<Point2>& points,
                                     const GlobalQuadrature& gq, const PdeCoefficients& pde) {
  const int K = static_cast<int>(points.size());
  const int total = gq.size();
  if (K == 0 || total == 0) throw std::invalid_argument("assemble_influence: empty inputs");

  if (!pde.is_laplace()) {
    const double residual = verify_fundamental(pde);
    if (residual > 1e-4)
      throw NumericalError("assemble_influence: fundamental solution failed verification");
  }

  const bool has_advection = pde.h.squaredNorm() > 0.0;

  InfluenceMatrices inf;
  inf.H.resize(K, total);
  inf.G2.resize(K, total);
  inf.G1 = Eigen::MatrixXd::Zero(K, total);

  for (int k = 0; k < K; ++k) {
    for (int g = 0; g < total; ++g) {
      const Point2 r = gq.points.col(g) - points[k];
      if (!(r.norm() > 1e-300)) {
        std::ostringstream msg;
        msg << "assemble_influence: point " << k << " coincides with quadrature point " << g;
        throw NumericalError(msg.str());
      }
      const KernelPair ker = kernel_pair(pde, r, gq.normals.col(g));
      const double w = gq.weights[g];
      inf.H(k, g) = ker.v * w;
      inf.G2(k, g) = ker.u * w;
      if (has_advection) inf.G1(k, g) = ker.u * pde.h.dot(gq.normals.col(g)) * w;
      if (!std::isfinite(inf.H(k, g)) || !std::isfinite(inf.G2(k, g)) ||
          !std::isfinite(inf.G1(k, g))) {
        std::ostringstream msg;
        msg << "assemble_influence: non-finite entry at source " << k << ", quadrature point "
            << g;
        throw NumericalError(msg.str());
      }
    }
  }
  return inf;
}

CondensedInfluence condense(const InfluenceMatrices& inf, const BasisMatrices& bm) {
  if (inf.H.cols() != bm.Phi.rows())
    throw std::invalid_argument("condense: influence and basis dimensions do not match");
  return {inf.H * bm.Phi, inf.G1 * bm.Phi, inf.G2 * bm.Phi};
}

CondensedInfluence assemble_condensed_reference(const std::vector<Point2>& points,
                                                const std::vector<int>& host_element,
                                                const std::vector<double>& host_local_t,
                                                const BoundaryMesh& mesh,
                                                const PdeCoefficients& pde, double offset) {
  if (!pde.is_laplace())
    throw std::invalid_argument("assemble_condensed_reference: only the Laplace kernel is supported");
  const int K = static_cast<int>(points.size());
  if (host_element.size() != points.size() || host_local_t.size() != points.size())
    throw std::invalid_argument("assemble_condensed_reference: inconsistent point metadata");
  const int N = mesh.size();
  const double s = offset;

  CondensedInfluence cond;
  cond.HPhi = Eigen::MatrixXd::Zero(K, 2 * N);
  cond.G1Phi = Eigen::MatrixXd::Zero(K, 2 * N);  // h = 0
  cond.G2Phi = Eigen::MatrixXd::Zero(K, 2 * N);

  for (int k = 0; k < K; ++k) {
    const Point2 p = points[k];
    for (const Element& e : mesh.elements) {
      if (e.shape != ElementShape::Straight)
        throw std::invalid_argument("assemble_condensed_reference: straight elements required");
      const int j = e.index;
      const Point2 half_dir = 0.5 * (e.b - e.a);
      const Point2 normal = outward_normal(e, 0.0);
      const bool singular = host_element[k] == j;
      const double t0 = singular ? host_local_t[k] : 0.0;

      for (int c = 1; c <= 2; ++c) {
        double hval, g2val;
        if (singular) {
          // Local form of the kernels on the host element: the distance
          // vector is exactly half_dir (t - t0), which avoids endpoint
          // cancellation inside the graded panels.
          const double dn = half_dir.dot(normal);
          const double len2 = half_dir.squaredNorm();
          hval = reference_singular_integral(
              [&](double t) {
                return -dn / (kTwoPi * len2 * (t - t0)) * linear_basis_value(c, t, s);
              },
              t0);
          g2val = reference_singular_integral(
              [&](double t) {
                return -std::log(std::abs(t - t0) * half_dir.norm()) / kTwoPi *
                       linear_basis_value(c, t, s);
              },
              t0);
        } else {
          hval = reference_singular_integral(
              [&](double t) {
                const Point2 r = element_point(e, t) - p;
                return fundamental_v(pde, r, normal) * linear_basis_value(c, t, s);
              },
              0.0);
          g2val = reference_singular_integral(
              [&](double t) {
                const Point2 r = element_point(e, t) - p;
                return fundamental_u(pde, r) * linear_basis_value(c, t, s);
              },
              0.0);
        }
        cond.HPhi(k, 2 * j + c - 1) += 0.5 * e.length * hval;
        cond.G2Phi(k, 2 * j + c - 1) += 0.5 * e.length * g2val;
      }
    }
  }
  return cond;
}

int BoundaryConditionSpec::dirichlet_count() const {
  int count = 0;
  for (bool d : is_dirichlet) count += d ? 1 : 0;
  return count;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> assemble_system(const CondensedInfluence& cond,
                                                            const Eigen::MatrixXd& Psi,
                                                            const BoundaryConditionSpec& bc) {
  const int K = static_cast<int>(Psi.rows());
  if (Psi.cols() != K || cond.HPhi.rows() != K || cond.HPhi.cols() != K ||
      cond.G1Phi.rows() != K || cond.G1Phi.cols() != K || cond.G2Phi.rows() != K ||
      cond.G2Phi.cols() != K)
    throw std::invalid_argument("assemble_system: K x K blocks required");
  if (bc.size() != K || bc.values.size() != K)
    throw std::invalid_argument("assemble_system: boundary condition size mismatch");

  const Eigen::MatrixXd A = 0.5 * Psi + cond.HPhi - cond.G1Phi;
  const Eigen::MatrixXd& B = cond.G2Phi;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(K, K);

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4 * K, 4 * K);
  M.block(0, 0, K, K) = A;
  M.block(0, K, K, K) = -B;
  M.block(K, 0, K, K) = Psi;
  M.block(K, 2 * K, K, K) = -I;
  M.block(2 * K, K, K, K) = Psi;
  M.block(2 * K, 3 * K, K, K) = -I;
  for (int k = 0; k < K; ++k) {
    if (bc.is_dirichlet[k])
      M(3 * K + k, 2 * K + k) = 1.0;  // C1
    else
      M(3 * K + k, 3 * K + k) = 1.0;  // C2
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(4 * K);
  rhs.tail(K) = bc.values;
  return {std::move(M), std::move(rhs)};
}

BemSolution solve_dense(const Eigen::MatrixXd& system, const Eigen::VectorXd& rhs) {
  const int size = static_cast<int>(system.rows());
  if (system.cols() != size) throw std::invalid_argument("solve_dense: system must be square");
  if (rhs.size() != size) throw std::invalid_argument("solve_dense: rhs size mismatch");
  if (size % 4 != 0) throw std::invalid_argument("solve_dense: system size must be 4K");
  const int K = size / 4;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < 1e-300 && !(cond < 1e15))
    throw NumericalError("solve_dense: system singular to working precision", cond);

  BemSolution sol;
  sol.condition_estimate = cond;

  Eigen::VectorXd x;
  if (cond < 1e15) {
    x = lu.solve(rhs);
    const Eigen::VectorXd residual = rhs - system * x;
    const Eigen::VectorXd correction = lu.solve(residual);
    const double before = residual.cwiseAbs().maxCoeff();
    const double after = (rhs - system * (x + correction)).cwiseAbs().maxCoeff();
    if (after <= before)
      x += correction;
    else
      sol.refinement_diverged = true;
  } else {
    // The factorization carries no information at this conditioning;
    // fall back to a rank-truncated minimum-norm least-squares solution.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system);
    x = cod.solve(rhs);
    sol.rank_truncated = true;
  }

  sol.alpha = x.segment(0, K);
  sol.beta = x.segment(K, K);
  sol.u = x.segment(2 * K, K);
  sol.v = x.segment(3 * K, K);

  // Rows K..2K and 2K..3K are Psi alpha - u and Psi beta - v. The
  // coefficient pair shares one solve, so both identities are checked
  // relative to the magnitude of the whole solution.
  const Eigen::MatrixXd Psi = system.block(K, 0, K, K);
  const double psi_scale = Psi.cwiseAbs().rowwise().sum().maxCoeff();
  const double coeff_scale = std::max(sol.alpha.cwiseAbs().maxCoeff(), sol.beta.cwiseAbs().maxCoeff());
  const double tol = 1e-8 * (1.0 + psi_scale * coeff_scale + sol.u.cwiseAbs().maxCoeff() +
                             sol.v.cwiseAbs().maxCoeff());
  if ((Psi * sol.alpha - sol.u).cwiseAbs().maxCoeff() > tol ||
      (Psi * sol.beta - sol.v).cwiseAbs().maxCoeff() > tol)
    throw NumericalError("solve_dense: coefficient/value consistency lost", cond);

  return sol;
}

namespace {

void require_interior(const BoundaryMesh& mesh, const std::vector<Point2>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!point_inside(mesh, points[i])) {
      std::ostringstream msg;
      msg << "interior_potential: point " << i << " is not strictly inside the domain";
      throw std::invalid_argument(msg.str());
    }
  }
}

} // namespace

Eigen::VectorXd interior_potential(const BoundaryMesh& mesh, const std::vector<Point2>& points,
                                   const BemSolution& sol, const InfluenceMatrices& inf_at_p,
                                   const BasisMatrices& bm) {
  require_interior(mesh, points);
  const Eigen::VectorXd ua = bm.Phi * sol.alpha;
  const Eigen::VectorXd ub = bm.Phi * sol.beta;
  return (-inf_at_p.H + inf_at_p.G1) * ua + inf_at_p.G2 * ub;
}

Eigen::VectorXd interior_potential(const BoundaryMesh& mesh, const std::vector<Point2>& points,
                                   const BemSolution& sol, const CondensedInfluence& cond_at_p) {
  require_interior(mesh, points);
  return (-cond_at_p.HPhi + cond_at_p.G1Phi) * sol.alpha + cond_at_p.G2Phi * sol.beta;
}

double flux_error(const BemSolution& sol, const Eigen::VectorXd& exact_v) {
  if (exact_v.size() != sol.v.size())
    throw std::invalid_argument("flux_error: exact flux length mismatch");
  return (sol.v - exact_v).cwiseAbs().mean();
}

double interior_error(const Eigen::VectorXd& computed_u, const Eigen::VectorXd& exact_u) {
  if (computed_u.size() != exact_u.size())
    throw std::invalid_argument("interior_error: length mismatch");
  return (computed_u - exact_u).cwiseAbs().mean();
}

} // namespace radbem
