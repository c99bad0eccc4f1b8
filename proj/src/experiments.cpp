#include "radbem/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "radbem/errors.hpp"
#include "radbem/singular.hpp"

namespace radbem::experiments {

namespace {

bool needs_laplace(ExactKind kind) { return kind == ExactKind::Poly || kind == ExactKind::ExpCos; }

double element_theta(const Element& e, double t) {
  return 0.5 * (e.theta0 + e.theta1) + 0.5 * (e.theta1 - e.theta0) * t;
}

} // namespace

void validate_config(const ExperimentConfig& config) {
  if (config.domain == DomainKind::Square) {
    if (config.elements < 4 || config.elements % 4 != 0)
      throw std::invalid_argument("config: square domain needs N >= 4 divisible by 4");
  } else {
    if (config.elements < 8) throw std::invalid_argument("config: flower domain needs N >= 8");
  }
  if (config.nodes < 1 || config.nodes > 64)
    throw std::invalid_argument("config: quadrature nodes must be in [1, 64]");
  if (!config.offset && config.nodes < 4)
    throw std::invalid_argument("config: automatic offset needs a rule with n >= 4");
  if (config.offset && !(*config.offset > 0.0 && *config.offset < 1.0))
    throw std::invalid_argument("config: offset must lie in (0, 1)");

  if (config.pde == PdeKind::Laplace && (config.h1 != 0.0 || config.h2 != 0.0 || config.lambda != 0.0))
    throw std::invalid_argument("config: laplace pde has h = 0 and lambda = 0");

  if (needs_laplace(config.exact) && config.pde != PdeKind::Laplace)
    throw std::invalid_argument("config: this exact solution satisfies only the Laplace equation");

  if (config.exact == ExactKind::ExpSum) {
    const double residual_coefficient = 2.0 + config.h1 + config.h2 + config.lambda;
    if (std::abs(residual_coefficient) > 1e-12) {
      std::ostringstream msg;
      msg << "config: exp(x+y) does not satisfy the PDE: residual ("
          << "2 + h1 + h2 + lambda) * exp(x+y) has coefficient " << residual_coefficient
          << "; set lambda = " << -(2.0 + config.h1 + config.h2);
      throw std::invalid_argument(msg.str());
    }
  }

  if (config.pde == PdeKind::AdvectionDiffusion)
    PdeCoefficients::advection_diffusion(config.h1, config.h2, config.lambda);  // regime check
}

ExactSolution make_exact(ExactKind kind) {
  switch (kind) {
    case ExactKind::Poly:
      return {[](const Point2& p) { return p.x() * p.x() - p.y() * p.y(); },
              [](const Point2& p) { return Point2(2.0 * p.x(), -2.0 * p.y()); }};
    case ExactKind::ExpCos:
      return {[](const Point2& p) { return std::exp(p.x()) * std::cos(p.y()); },
              [](const Point2& p) {
                return Point2(std::exp(p.x()) * std::cos(p.y()),
                              -std::exp(p.x()) * std::sin(p.y()));
              }};
    case ExactKind::ExpSum:
      return {[](const Point2& p) { return std::exp(p.x() + p.y()); },
              [](const Point2& p) {
                const double e = std::exp(p.x() + p.y());
                return Point2(e, e);
              }};
  }
  throw std::logic_error("make_exact: unknown kind");
}

PdeCoefficients make_pde(const ExperimentConfig& config) {
  if (config.pde == PdeKind::Laplace) return PdeCoefficients::laplace();
  return PdeCoefficients::advection_diffusion(config.h1, config.h2, config.lambda);
}

BoundaryMesh build_mesh(const ExperimentConfig& config) {
  if (config.domain == DomainKind::Square) return discretize_square(config.elements, 1.0);
  return discretize_flower(config.elements);
}

BasisKind make_basis(BasisTag tag, int source_count) {
  switch (tag) {
    case BasisTag::Gaussian:
      return BasisKind::gaussian(default_shape_parameter(source_count));
    case BasisTag::Multiquadric:
      return BasisKind::multiquadric(default_shape_parameter(source_count));
    case BasisTag::InverseMultiquadric:
      return BasisKind::inverse_multiquadric(default_shape_parameter(source_count));
    case BasisTag::InverseQuadric:
      return BasisKind::inverse_quadric(default_shape_parameter(source_count));
    case BasisTag::ThinPlateSpline:
      return BasisKind::thin_plate_spline();
    case BasisTag::PolyharmonicSpline:
      return BasisKind::polyharmonic_spline();
    case BasisTag::LocalC0:
      return BasisKind::local_c0();
    case BasisTag::LocalC2:
      return BasisKind::local_c2();
    case BasisTag::LinearElement:
      return BasisKind::linear_element();
  }
  throw std::logic_error("make_basis: unknown tag");
}

double resolve_offset(const ExperimentConfig& config) {
  if (config.offset) return *config.offset;
  return optimal_offset(config.nodes).s_opt;
}

BoundaryConditionSpec make_boundary_conditions(const ExperimentConfig& config,
                                               const BoundaryMesh& mesh,
                                               const SourceSet& sources) {
  const ExactSolution exact = make_exact(config.exact);
  const int K = sources.size();
  BoundaryConditionSpec bc;
  bc.is_dirichlet.resize(K);
  bc.values.resize(K);

  for (int k = 0; k < K; ++k) {
    const Element& host = mesh.elements[sources.host_element[k]];
    bool dirichlet = true;
    if (config.bc == BcKind::Mixed) {
      if (config.domain == DomainKind::Square) {
        const int per_side = config.elements / 4;
        const int side = host.index / per_side;  // 0 bottom, 1 right, 2 top, 3 left
        dirichlet = (side == 0 || side == 2);
      } else {
        double theta = std::fmod(element_theta(host, sources.local_t[k]), 2.0 * M_PI);
        if (theta < 0) theta += 2.0 * M_PI;
        dirichlet = theta < M_PI;
      }
    }
    bc.is_dirichlet[k] = dirichlet;
    if (dirichlet) {
      bc.values[k] = exact.value(sources.points[k]);
    } else {
      const Point2 normal = outward_normal(host, sources.local_t[k]);
      bc.values[k] = exact.gradient(sources.points[k]).dot(normal);
    }
  }
  return bc;
}

CaseResult run_case(const ExperimentConfig& config) {
  validate_config(config);

  const BoundaryMesh mesh = build_mesh(config);
  const QuadratureRule rule = gauss_legendre(config.nodes);
  const GlobalQuadrature gq = global_quadrature(mesh, rule);
  const double s = resolve_offset(config);
  const SourceSet sources = place_sources(mesh, s);
  const BasisKind kind = make_basis(config.basis, sources.size());
  const BasisMatrices bm = build_matrices(kind, sources, gq);
  const PdeCoefficients pde = make_pde(config);
  const ExactSolution exact = make_exact(config.exact);

  const InfluenceMatrices inf = assemble_influence(sources, gq, pde);
  const BoundaryConditionSpec bc = make_boundary_conditions(config, mesh, sources);
  auto [system, rhs] = assemble_system(inf, bm, bc);
  const BemSolution sol = solve_dense(system, rhs);

  CaseResult result;
  result.condition = sol.condition_estimate;
  result.rank_truncated = sol.rank_truncated;

  Eigen::VectorXd exact_v(sources.size());
  for (int k = 0; k < sources.size(); ++k) {
    const Element& host = mesh.elements[sources.host_element[k]];
    const Point2 normal = outward_normal(host, sources.local_t[k]);
    exact_v[k] = exact.gradient(sources.points[k]).dot(normal);
  }
  result.flux_err = flux_error(sol, exact_v);

  const std::vector<Point2> inner = interior_points(sources.points, 0.5);
  const InfluenceMatrices inf_inner = assemble_influence(inner, gq, pde);
  const Eigen::VectorXd u_inner = interior_potential(mesh, inner, sol, inf_inner, bm);
  Eigen::VectorXd exact_inner(u_inner.size());
  for (int k = 0; k < exact_inner.size(); ++k) exact_inner[k] = exact.value(inner[k]);
  result.interior_err = interior_error(u_inner, exact_inner);
  return result;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                const std::vector<double>& s_values) {
  if (config.bc != BcKind::Dirichlet)
    throw std::invalid_argument("run_sweep: offset sweeps use all-Dirichlet data");
  std::vector<SweepRow> rows;
  rows.reserve(s_values.size());
  for (double s : s_values) {
    ExperimentConfig cfg = config;
    cfg.offset = s;
    SweepRow row;
    row.s = s;
    try {
      row.er = run_case(cfg).flux_err;
    } catch (const std::exception& e) {
      row.er = std::numeric_limits<double>::quiet_NaN();
      row.failed = true;
      std::cerr << "warning: sweep point s = " << s << " failed: " << e.what() << "\n";
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> default_sweep_grid(int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes);
  std::vector<double> grid;
  const int count = 200;
  for (int i = 0; i < count; ++i) {
    double s = 0.01 + (0.99 - 0.01) * i / (count - 1);
    for (int k = 0; k < rule.n; ++k)
      if (std::abs(rule.nodes[k] - s) < 1e-6) s += 1e-6;
    grid.push_back(s);
  }
  return grid;
}

std::vector<TableRow> run_table(const ExperimentConfig& base, const std::vector<BasisTag>& bases,
                                const std::vector<int>& element_counts,
                                const std::vector<BcKind>& bcs) {
  std::vector<TableRow> rows;
  for (BcKind bc : bcs) {
    for (BasisTag basis : bases) {
      for (int n_elements : element_counts) {
        ExperimentConfig cfg = base;
        cfg.bc = bc;
        cfg.basis = basis;
        cfg.elements = n_elements;
        TableRow row;
        row.bc = bc;
        row.basis = basis;
        row.elements = n_elements;
        try {
          row.error = run_case(cfg).interior_err;
        } catch (const std::exception& e) {
          row.error = std::numeric_limits<double>::quiet_NaN();
          row.failure = e.what();
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<CompareRow> run_compare(const ExperimentConfig& base,
                                    const std::vector<std::pair<double, double>>& h_cases,
                                    const std::vector<int>& element_counts) {
  std::vector<CompareRow> rows;
  for (const auto& [h1, h2] : h_cases) {
    const double lambda = -(2.0 + h1 + h2);
    for (int n_elements : element_counts) {
      for (const char* method : {"linear", "radial"}) {
        ExperimentConfig cfg = base;
        cfg.pde = PdeKind::AdvectionDiffusion;
        cfg.h1 = h1;
        cfg.h2 = h2;
        cfg.lambda = lambda;
        cfg.exact = ExactKind::ExpSum;
        cfg.bc = BcKind::Dirichlet;
        cfg.elements = n_elements;
        cfg.basis = std::string(method) == "radial" ? BasisTag::Gaussian : BasisTag::LinearElement;
        CompareRow row;
        row.domain = base.domain;
        row.h1 = h1;
        row.h2 = h2;
        row.lambda = lambda;
        row.elements = n_elements;
        row.method = method;
        row.error = run_case(cfg).interior_err;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<ParityRow> run_parity(int element_count, const std::vector<ExactKind>& exacts) {
  ExperimentConfig cfg;
  cfg.domain = DomainKind::Square;
  cfg.pde = PdeKind::Laplace;
  cfg.basis = BasisTag::LinearElement;
  cfg.elements = element_count;
  cfg.nodes = 16;
  cfg.bc = BcKind::Dirichlet;
  validate_config(cfg);

  const BoundaryMesh mesh = build_mesh(cfg);
  const QuadratureRule rule = gauss_legendre(cfg.nodes);
  const GlobalQuadrature gq = global_quadrature(mesh, rule);
  const double s = resolve_offset(cfg);
  const SourceSet sources = place_sources(mesh, s);
  const BasisKind kind = BasisKind::linear_element();
  const BasisMatrices bm = build_matrices(kind, sources, gq);
  const PdeCoefficients pde = PdeCoefficients::laplace();

  const InfluenceMatrices inf = assemble_influence(sources, gq, pde);
  const CondensedInfluence cond_quadrature = condense(inf, bm);
  const CondensedInfluence cond_reference = assemble_condensed_reference(
      sources.points, sources.host_element, sources.local_t, mesh, pde, s);

  const std::vector<Point2> inner = interior_points(sources.points, 0.5);
  const InfluenceMatrices inf_inner = assemble_influence(inner, gq, pde);
  const CondensedInfluence cond_inner_quadrature = condense(inf_inner, bm);
  const std::vector<int> no_host(inner.size(), -1);
  const std::vector<double> no_t(inner.size(), 0.0);
  const CondensedInfluence cond_inner_reference =
      assemble_condensed_reference(inner, no_host, no_t, mesh, pde, s);

  std::vector<ParityRow> rows;
  for (ExactKind exact_kind : exacts) {
    ExperimentConfig case_cfg = cfg;
    case_cfg.exact = exact_kind;
    validate_config(case_cfg);
    const ExactSolution exact = make_exact(exact_kind);
    const BoundaryConditionSpec bc = make_boundary_conditions(case_cfg, mesh, sources);

    Eigen::VectorXd exact_inner(static_cast<int>(inner.size()));
    for (int k = 0; k < exact_inner.size(); ++k) exact_inner[k] = exact.value(inner[k]);

    auto solve_path = [&](const CondensedInfluence& cond, const CondensedInfluence& cond_inner) {
      auto [system, rhs] = assemble_system(cond, bm.Psi, bc);
      const BemSolution sol = solve_dense(system, rhs);
      const Eigen::VectorXd u_inner = interior_potential(mesh, inner, sol, cond_inner);
      return interior_error(u_inner, exact_inner);
    };

    ParityRow row;
    row.exact = exact_kind;
    row.er_quadrature = solve_path(cond_quadrature, cond_inner_quadrature);
    row.er_reference = solve_path(cond_reference, cond_inner_reference);
    row.rel_diff = std::abs(row.er_quadrature - row.er_reference) / row.er_reference;
    rows.push_back(row);
  }
  return rows;
}

std::string format_sci(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.5e", x);
  return buffer;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!path.empty()) {
    file.open(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!file) throw std::invalid_argument("write_csv: cannot open output file " + path);
    out = &file;
  }
  auto write_row = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) *out << ',';
      *out << fields[i];
    }
    *out << '\n';
  };
  write_row(header);
  for (const auto& row : rows) write_row(row);
  out->flush();
}

std::string to_string(DomainKind k) { return k == DomainKind::Square ? "square" : "flower"; }
std::string to_string(PdeKind k) { return k == PdeKind::Laplace ? "laplace" : "advdiff"; }
std::string to_string(BcKind k) { return k == BcKind::Dirichlet ? "dirichlet" : "mixed"; }

std::string to_string(ExactKind k) {
  switch (k) {
    case ExactKind::Poly: return "poly";
    case ExactKind::ExpCos: return "expcos";
    case ExactKind::ExpSum: return "expsum";
  }
  return "?";
}

std::string to_string(BasisTag t) {
  switch (t) {
    case BasisTag::Gaussian: return "gaussian";
    case BasisTag::Multiquadric: return "mq";
    case BasisTag::InverseMultiquadric: return "imq";
    case BasisTag::InverseQuadric: return "iq";
    case BasisTag::ThinPlateSpline: return "tps";
    case BasisTag::PolyharmonicSpline: return "phs";
    case BasisTag::LocalC0: return "c0";
    case BasisTag::LocalC2: return "c2";
    case BasisTag::LinearElement: return "linear";
  }
  return "?";
}

DomainKind domain_from_string(const std::string& s) {
  if (s == "square") return DomainKind::Square;
  if (s == "flower") return DomainKind::Flower;
  throw std::invalid_argument("unknown domain '" + s + "' (square|flower)");
}

PdeKind pde_from_string(const std::string& s) {
  if (s == "laplace") return PdeKind::Laplace;
  if (s == "advdiff") return PdeKind::AdvectionDiffusion;
  throw std::invalid_argument("unknown pde '" + s + "' (laplace|advdiff)");
}

BcKind bc_from_string(const std::string& s) {
  if (s == "dirichlet") return BcKind::Dirichlet;
  if (s == "mixed") return BcKind::Mixed;
  throw std::invalid_argument("unknown bc '" + s + "' (dirichlet|mixed)");
}

ExactKind exact_from_string(const std::string& s) {
  if (s == "poly") return ExactKind::Poly;
  if (s == "expcos") return ExactKind::ExpCos;
  if (s == "expsum") return ExactKind::ExpSum;
  throw std::invalid_argument("unknown exact solution '" + s + "' (poly|expcos|expsum)");
}

BasisTag basis_from_string(const std::string& s) {
  if (s == "gaussian") return BasisTag::Gaussian;
  if (s == "mq") return BasisTag::Multiquadric;
  if (s == "imq") return BasisTag::InverseMultiquadric;
  if (s == "iq") return BasisTag::InverseQuadric;
  if (s == "tps") return BasisTag::ThinPlateSpline;
  if (s == "phs") return BasisTag::PolyharmonicSpline;
  if (s == "c0") return BasisTag::LocalC0;
  if (s == "c2") return BasisTag::LocalC2;
  if (s == "linear") return BasisTag::LinearElement;
  throw std::invalid_argument("unknown basis '" + s + "' (gaussian|mq|imq|iq|tps|phs|c0|c2|linear)");
}

} // namespace radbem::experiments
