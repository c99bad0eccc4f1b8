#ifndef RADBEM_EXPERIMENTS_HPP
#define RADBEM_EXPERIMENTS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radbem/basis.hpp"
#include "radbem/geometry.hpp"
#include "radbem/kernels.hpp"
#include "radbem/solver.hpp"

namespace radbem::experiments {

enum class DomainKind { Square, Flower };
enum class PdeKind { Laplace, AdvectionDiffusion };
enum class BcKind { Dirichlet, Mixed };
enum class ExactKind { Poly, ExpCos, ExpSum };

/// One solver run: domain, PDE, boundary basis, discretization sizes,
/// source offset (auto = tabulated/computed optimum) and the exact
/// solution supplying boundary data and reference values.
struct ExperimentConfig {
  DomainKind domain = DomainKind::Square;
  PdeKind pde = PdeKind::Laplace;
  double h1 = 0.0;
  double h2 = 0.0;
  double lambda = 0.0;
  BasisTag basis = BasisTag::Gaussian;
  int elements = 40;
  int nodes = 16;
  std::optional<double> offset;  // nullopt = optimal for the rule
  BcKind bc = BcKind::Dirichlet;
  ExactKind exact = ExactKind::Poly;
  std::string out;
};

/// Throws std::invalid_argument with a specific message on any
/// inconsistency (sizes, PDE regime, exact-solution compatibility).
void validate_config(const ExperimentConfig& config);

struct ExactSolution {
  std::function<double(const Point2&)> value;
  std::function<Point2(const Point2&)> gradient;
};

ExactSolution make_exact(ExactKind kind);
PdeCoefficients make_pde(const ExperimentConfig& config);
BoundaryMesh build_mesh(const ExperimentConfig& config);
BasisKind make_basis(BasisTag tag, int source_count);
double resolve_offset(const ExperimentConfig& config);

/// Boundary data at the sources: all-Dirichlet, or the mixed split
/// (square: potential on bottom/top, flux on left/right; flower:
/// potential for theta in [0, pi), flux on the other half).
BoundaryConditionSpec make_boundary_conditions(const ExperimentConfig& config,
                                               const BoundaryMesh& mesh,
                                               const SourceSet& sources);

struct CaseResult {
  double flux_err = 0.0;      // mean |v - v_exact| at the sources
  double interior_err = 0.0;  // mean |u - u_exact| at points p/2
  double condition = 0.0;
  bool rank_truncated = false;
};

CaseResult run_case(const ExperimentConfig& config);

struct SweepRow {
  double s = 0.0;
  double er = 0.0;
  bool failed = false;
};

/// Flux-error sweep over source offsets (all-Dirichlet). Failures are
/// recorded as NaN rows, not propagated.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                const std::vector<double>& s_values);

/// 200 uniform offsets in (0.01, 0.99), nudged off quadrature nodes.
std::vector<double> default_sweep_grid(int nodes);

struct TableRow {
  BcKind bc = BcKind::Dirichlet;
  BasisTag basis = BasisTag::Gaussian;
  int elements = 0;
  double error = 0.0;
  std::string failure;  // empty on success
};

std::vector<TableRow> run_table(const ExperimentConfig& base, const std::vector<BasisTag>& bases,
                                const std::vector<int>& element_counts,
                                const std::vector<BcKind>& bcs);

struct CompareRow {
  DomainKind domain = DomainKind::Square;
  double h1 = 0.0;
  double h2 = 0.0;
  double lambda = 0.0;
  int elements = 0;
  std::string method;  // "radial" or "linear"
  double error = 0.0;
};

/// Radial (Gaussian) versus linear BEM on identical meshes for the
/// advection-diffusion family with exact solution exp(x + y).
std::vector<CompareRow> run_compare(const ExperimentConfig& base,
                                    const std::vector<std::pair<double, double>>& h_cases,
                                    const std::vector<int>& element_counts);

struct ParityRow {
  ExactKind exact = ExactKind::Poly;
  double er_quadrature = 0.0;
  double er_reference = 0.0;
  double rel_diff = 0.0;
};

/// Interior error of the linear BEM with all integrals from the global
/// quadrature versus the graded reference integrator (square, Laplace).
std::vector<ParityRow> run_parity(int element_count, const std::vector<ExactKind>& exacts);

// --- CSV and naming helpers --------------------------------------------

/// Scientific notation with 6 significant digits.
std::string format_sci(double x);

/// Writes header + rows as CSV (UTF-8, LF) to the path, or to stdout
/// when the path is empty.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string to_string(DomainKind k);
std::string to_string(PdeKind k);
std::string to_string(BcKind k);
std::string to_string(ExactKind k);
std::string to_string(BasisTag t);

DomainKind domain_from_string(const std::string& s);
PdeKind pde_from_string(const std::string& s);
BcKind bc_from_string(const std::string& s);
ExactKind exact_from_string(const std::string& s);
BasisTag basis_from_string(const std::string& s);

} // namespace radbem::experiments

#endif
