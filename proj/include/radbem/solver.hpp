#ifndef RADBEM_SOLVER_HPP
#define RADBEM_SOLVER_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "radbem/basis.hpp"
#include "radbem/geometry.hpp"
#include "radbem/kernels.hpp"
#include "radbem/quadrature.hpp"

namespace radbem {

/**
 * Kernel-times-weight rows, one per evaluation point p_k:
 *   H[k, g]  = v*(q_g - p_k) w_g
 *   G1[k, g] = u*(q_g - p_k) (h . n_g) w_g     (zero when h = 0)
 *   G2[k, g] = u*(q_g - p_k) w_g
 */
struct InfluenceMatrices {
  Eigen::MatrixXd H;
  Eigen::MatrixXd G1;
  Eigen::MatrixXd G2;
};

InfluenceMatrices assemble_influence(const std::vector<Point2>& points,
                                     const GlobalQuadrature& gq, const PdeCoefficients& pde);

inline InfluenceMatrices assemble_influence(const SourceSet& sources, const GlobalQuadrature& gq,
                                            const PdeCoefficients& pde) {
  return assemble_influence(sources.points, gq, pde);
}

/// Influence matrices contracted with the basis: K x K blocks
/// H Phi, G1 Phi, G2 Phi used by the block system and by interior
/// evaluation. Also produced directly by the reference integrator.
struct CondensedInfluence {
  Eigen::MatrixXd HPhi;
  Eigen::MatrixXd G1Phi;
  Eigen::MatrixXd G2Phi;
};

CondensedInfluence condense(const InfluenceMatrices& inf, const BasisMatrices& bm);

/**
 * Element-by-element reference integration of the influence-times-basis
 * products for the LinearElement basis on straight Laplace meshes.
 * Integrals over the host element are split at the source's local
 * coordinate and graded into the singularity; all others use the same
 * panel scheme with a split at 0. host_element[k] = -1 marks points
 * off the boundary (interior evaluation).
 */
CondensedInfluence assemble_condensed_reference(const std::vector<Point2>& points,
                                                const std::vector<int>& host_element,
                                                const std::vector<double>& host_local_t,
                                                const BoundaryMesh& mesh,
                                                const PdeCoefficients& pde, double offset);

/// Per-source boundary condition: constrained value of u (Dirichlet)
/// or of the flux v (Neumann).
struct BoundaryConditionSpec {
  std::vector<bool> is_dirichlet;
  Eigen::VectorXd values;

  int size() const { return static_cast<int>(is_dirichlet.size()); }
  int dirichlet_count() const;
};

/**
 * The 4K x 4K block system in the unknowns [alpha; beta; u; v]:
 *   [ A   -B    0    0 ] [alpha]   [0]
 *   [ Psi  0   -I    0 ] [beta ] = [0]
 *   [ 0    Psi  0   -I ] [u    ]   [0]
 *   [ 0    0    C1   C2] [v    ]   [w]
 * with A = Psi/2 + H Phi - G1 Phi and B = G2 Phi.
 */
std::pair<Eigen::MatrixXd, Eigen::VectorXd> assemble_system(const CondensedInfluence& cond,
                                                            const Eigen::MatrixXd& Psi,
                                                            const BoundaryConditionSpec& bc);

inline std::pair<Eigen::MatrixXd, Eigen::VectorXd> assemble_system(
    const InfluenceMatrices& inf, const BasisMatrices& bm, const BoundaryConditionSpec& bc) {
  return assemble_system(condense(inf, bm), bm.Psi, bc);
}

struct BemSolution {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double condition_estimate = 0.0;
  bool refinement_diverged = false;
  bool rank_truncated = false;  // minimum-norm fallback engaged
};

/**
 * LU with partial pivoting plus one step of iterative refinement
 * (the update is kept only when it reduces the residual). When the
 * factorization is numerically meaningless (condition estimate beyond
 * 1e15) the solution is recomputed as a rank-truncated minimum-norm
 * least-squares solution instead, flagged in the result.
 */
BemSolution solve_dense(const Eigen::MatrixXd& system, const Eigen::VectorXd& rhs);

/// Interior potential u(p) = (-H_p + G1_p) Phi alpha + G2_p Phi beta
/// for strictly interior points (winding-number checked).
Eigen::VectorXd interior_potential(const BoundaryMesh& mesh, const std::vector<Point2>& points,
                                   const BemSolution& sol, const InfluenceMatrices& inf_at_p,
                                   const BasisMatrices& bm);

/// Same evaluation from pre-contracted rows (reference path).
Eigen::VectorXd interior_potential(const BoundaryMesh& mesh, const std::vector<Point2>& points,
                                   const BemSolution& sol, const CondensedInfluence& cond_at_p);

/// Mean absolute flux error (1/K) sum |v_k - v_exact_k|.
double flux_error(const BemSolution& sol, const Eigen::VectorXd& exact_v);

/// Mean absolute difference between two value vectors.
double interior_error(const Eigen::VectorXd& computed_u, const Eigen::VectorXd& exact_u);

} // namespace radbem

#endif
