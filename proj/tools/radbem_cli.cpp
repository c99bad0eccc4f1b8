// Command-line harness for the radial BEM library: offset tables,
// offset sweeps, accuracy tables, method comparisons and the
// quadrature-versus-reference parity check. Emits CSV.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "radbem/errors.hpp"
#include "radbem/experiments.hpp"
#include "radbem/singular.hpp"

namespace ex = radbem::experiments;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const std::string& item : split_list(text)) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("invalid ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("invalid ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
  return out;
}

struct CommonOpts {
  std::string domain = "square";
  std::string pde = "laplace";
  double h1 = 0.0;
  double h2 = 0.0;
  double lambda = 0.0;
  std::string basis = "gaussian";
  std::string elements = "40";
  int nodes = 16;
  std::string offset = "auto";
  std::string bc = "dirichlet";
  std::string exact = "poly";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--domain", opts.domain, "Computational domain (square|flower)");
  cmd->add_option("--pde", opts.pde, "PDE family (laplace|advdiff)");
  cmd->add_option("--h1", opts.h1, "Advection component h1");
  cmd->add_option("--h2", opts.h2, "Advection component h2");
  cmd->add_option("--lambda", opts.lambda, "Reaction coefficient");
  cmd->add_option("--basis", opts.basis, "Boundary basis (gaussian|mq|imq|iq|tps|phs|c0|c2|linear)");
  cmd->add_option("--elements", opts.elements, "Boundary element count (comma list where applicable)");
  cmd->add_option("--nodes", opts.nodes, "Gauss nodes per element");
  cmd->add_option("--offset", opts.offset, "Source offset in (0,1), or 'auto'");
  cmd->add_option("--bc", opts.bc, "Boundary conditions (dirichlet|mixed)");
  cmd->add_option("--exact", opts.exact, "Exact solution (poly|expcos|expsum, comma list for parity)");
  cmd->add_option("--out", opts.out, "Output CSV path (stdout when omitted)");
  cmd->set_config("--config", "", "Key-value config file; command-line flags win");
}

ex::ExperimentConfig to_config(const CommonOpts& opts, bool lambda_supplied) {
  ex::ExperimentConfig cfg;
  cfg.domain = ex::domain_from_string(opts.domain);
  cfg.pde = ex::pde_from_string(opts.pde);
  cfg.h1 = opts.h1;
  cfg.h2 = opts.h2;
  cfg.lambda = opts.lambda;
  cfg.basis = ex::basis_from_string(split_list(opts.basis).front());
  const std::vector<int> elems = parse_int_list(opts.elements, "--elements");
  cfg.elements = elems.front();
  cfg.nodes = opts.nodes;
  if (opts.offset != "auto") {
    try {
      cfg.offset = std::stod(opts.offset);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid --offset '" + opts.offset + "' (auto or a real)");
    }
  }
  cfg.bc = ex::bc_from_string(opts.bc);
  cfg.exact = ex::exact_from_string(split_list(opts.exact).front());
  cfg.out = opts.out;

  // exp(x+y) solves the PDE only for lambda = -(2+h1+h2); fill it in
  // when the user leaves lambda unset.
  if (cfg.exact == ex::ExactKind::ExpSum && !lambda_supplied)
    cfg.lambda = -(2.0 + cfg.h1 + cfg.h2);
  return cfg;
}

int run_optimal_points(int nodes, const std::string& out, const std::string& profile_path) {
  const radbem::QuadratureRule rule = radbem::gauss_legendre(nodes);
  const std::vector<double> zeros = radbem::find_err0_zeros(rule);
  const radbem::OffsetChoice choice = radbem::optimal_offset(nodes);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < zeros.size(); ++i)
    rows.push_back({std::to_string(i + 1), ex::format_sci(zeros[i])});
  rows.push_back({"-1", ex::format_sci(choice.s_opt)});
  ex::write_csv(out, {"zero_index", "s"}, rows);

  std::cerr << "n = " << nodes << ": " << zeros.size() << " quadrature-error zeros; s_opt = "
            << choice.s_opt << " ("
            << (choice.provenance == radbem::OffsetProvenance::Tabulated ? "tabulated" : "computed")
            << ")\n";

  if (!profile_path.empty()) {
    const radbem::ErrorProfile profile = radbem::build_error_profile(rule, 1000);
    std::vector<std::vector<std::string>> prows;
    for (const auto& sample : profile.samples)
      prows.push_back({ex::format_sci(sample.s), ex::format_sci(sample.err0),
                       ex::format_sci(sample.err1), ex::format_sci(sample.err2)});
    ex::write_csv(profile_path, {"s", "err0", "err1", "err2"}, prows);
  }
  return 0;
}

int run_sweep_cmd(const CommonOpts& opts, bool lambda_supplied, const std::string& s_list,
                  double s_min, double s_max, int s_count) {
  ex::ExperimentConfig cfg = to_config(opts, lambda_supplied);
  ex::validate_config(cfg);

  std::vector<double> grid;
  if (!s_list.empty()) {
    grid = parse_double_list(s_list, "--s-list");
  } else if (s_count > 0) {
    for (int i = 0; i < s_count; ++i)
      grid.push_back(s_count == 1 ? s_min : s_min + (s_max - s_min) * i / (s_count - 1));
  } else {
    grid = ex::default_sweep_grid(cfg.nodes);
  }
  // keep every sweep point clear of the quadrature nodes
  const radbem::QuadratureRule rule = radbem::gauss_legendre(cfg.nodes);
  for (double& s : grid)
    for (int k = 0; k < rule.n; ++k)
      if (std::abs(rule.nodes[k] - s) < 1e-6) s += 1e-6;

  const std::vector<ex::SweepRow> rows = ex::run_sweep(cfg, grid);
  std::vector<std::vector<std::string>> csv;
  for (const auto& row : rows) csv.push_back({ex::format_sci(row.s), ex::format_sci(row.er)});
  ex::write_csv(cfg.out, {"s", "er"}, csv);

  const auto best = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (std::isnan(a.er)) return false;
    if (std::isnan(b.er)) return true;
    return a.er < b.er;
  });
  if (best != rows.end())
    std::cerr << "sweep: " << rows.size() << " offsets, min Er = " << ex::format_sci(best->er)
              << " at s = " << best->s << "\n";
  return 0;
}

int run_table_cmd(const CommonOpts& opts, bool lambda_supplied) {
  ex::ExperimentConfig base = to_config(opts, lambda_supplied);
  std::vector<radbem::BasisTag> bases;
  for (const std::string& b : split_list(opts.basis)) bases.push_back(ex::basis_from_string(b));
  const std::vector<int> elems = parse_int_list(opts.elements, "--elements");
  std::vector<ex::BcKind> bcs;
  for (const std::string& b : split_list(opts.bc)) bcs.push_back(ex::bc_from_string(b));

  const std::vector<ex::TableRow> rows = ex::run_table(base, bases, elems, bcs);
  std::vector<std::vector<std::string>> csv;
  int failures = 0;
  for (const auto& row : rows) {
    std::string cell;
    if (row.failure.empty()) {
      cell = ex::format_sci(row.error);
    } else {
      cell = "FAIL(" + row.failure + ")";
      ++failures;
    }
    csv.push_back(
        {ex::to_string(row.bc), ex::to_string(row.basis), std::to_string(row.elements), cell});
  }
  ex::write_csv(base.out, {"bc", "rbf", "N", "error"}, csv);
  std::cerr << "table: " << rows.size() << " cells, " << failures << " failed\n";
  return 0;
}

int run_compare_cmd(const CommonOpts& opts, bool h_supplied, bool lambda_supplied,
                    bool elements_supplied) {
  ex::ExperimentConfig base = to_config(opts, false);
  std::vector<std::pair<double, double>> h_cases;
  if (h_supplied)
    h_cases = {{opts.h1, opts.h2}};
  else
    h_cases = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};

  if (lambda_supplied) {
    for (const auto& [h1, h2] : h_cases)
      if (std::abs(opts.lambda + 2.0 + h1 + h2) > 1e-12)
        throw std::invalid_argument(
            "compare: lambda must equal -(2+h1+h2) for the exp(x+y) solution");
  }

  std::vector<int> elems = {40, 80, 120, 160, 200};
  if (elements_supplied) elems = parse_int_list(opts.elements, "--elements");

  const std::vector<ex::CompareRow> rows = ex::run_compare(base, h_cases, elems);
  std::vector<std::vector<std::string>> csv;
  for (const auto& row : rows)
    csv.push_back({ex::to_string(row.domain), ex::format_sci(row.h1), ex::format_sci(row.h2),
                   ex::format_sci(row.lambda), std::to_string(row.elements), row.method,
                   ex::format_sci(row.error)});
  ex::write_csv(base.out, {"domain", "h1", "h2", "lambda", "N", "method", "error"}, csv);

  // rows come in (linear, radial) pairs per cell
  int violations = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const double linear = rows[i].error, radial = rows[i + 1].error;
    const bool ok = radial < linear;
    if (!ok) ++violations;
    std::cerr << "compare " << ex::to_string(rows[i].domain) << " h=(" << rows[i].h1 << ","
              << rows[i].h2 << ") N=" << rows[i].elements << ": radial "
              << ex::format_sci(radial) << (ok ? " < " : " >= ") << "linear "
              << ex::format_sci(linear) << (ok ? "" : "  [assertion failed]") << "\n";
  }
  std::cerr << "compare: " << violations << " of " << rows.size() / 2
            << " cells violate radial < linear\n";
  return 0;
}

int run_parity_cmd(const CommonOpts& opts) {
  const std::vector<int> elems = parse_int_list(opts.elements, "--elements");
  std::vector<ex::ExactKind> exacts;
  for (const std::string& e : split_list(opts.exact)) exacts.push_back(ex::exact_from_string(e));

  const std::vector<ex::ParityRow> rows = ex::run_parity(elems.front(), exacts);
  std::vector<std::vector<std::string>> csv;
  for (const auto& row : rows) {
    csv.push_back({ex::to_string(row.exact), ex::format_sci(row.er_quadrature),
                   ex::format_sci(row.er_reference), ex::format_sci(row.rel_diff)});
    std::cerr << "parity " << ex::to_string(row.exact) << ": quadrature "
              << ex::format_sci(row.er_quadrature) << " vs reference "
              << ex::format_sci(row.er_reference) << " (" << row.rel_diff * 100.0 << "%"
              << (row.rel_diff < 0.05 ? ", ok" : ", above 5%") << ")\n";
  }
  ex::write_csv(opts.out, {"exact", "er_quadrature", "er_reference", "rel_diff"}, csv);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial boundary element solver and experiment harness"};
  app.require_subcommand(1);

  // optimal-points
  int op_nodes = 16;
  std::string op_out, op_profile;
  CLI::App* op = app.add_subcommand("optimal-points",
                                    "Quadrature-error zeros and the chosen source offset");
  op->add_option("--nodes", op_nodes, "Gauss nodes per element");
  op->add_option("--out", op_out, "Output CSV path (stdout when omitted)");
  op->add_option("--profile", op_profile, "Also write an err0/err1/err2 profile CSV here");
  op->set_config("--config", "", "Key-value config file; command-line flags win");

  // sweep-s
  CommonOpts sweep_opts;
  std::string sweep_s_list;
  double sweep_s_min = 0.01, sweep_s_max = 0.99;
  int sweep_s_count = 0;
  CLI::App* sweep = app.add_subcommand("sweep-s", "Flux error as a function of the source offset");
  add_common(sweep, sweep_opts);
  sweep->add_option("--s-list", sweep_s_list, "Explicit comma-separated offsets");
  sweep->add_option("--s-min", sweep_s_min, "Uniform grid start");
  sweep->add_option("--s-max", sweep_s_max, "Uniform grid end");
  sweep->add_option("--s-count", sweep_s_count, "Uniform grid size (0 = default 200-point grid)");

  // table
  CommonOpts table_opts;
  table_opts.basis = "gaussian,imq,tps,phs,c0";
  table_opts.elements = "8,16,32,64,128";
  table_opts.bc = "dirichlet,mixed";
  table_opts.exact = "expcos";
  CLI::App* table = app.add_subcommand("table", "Interior-error table over basis x N x bc");
  add_common(table, table_opts);

  // compare
  CommonOpts compare_opts;
  compare_opts.pde = "advdiff";
  compare_opts.exact = "expsum";
  CLI::App* compare = app.add_subcommand("compare", "Radial versus linear BEM on identical meshes");
  add_common(compare, compare_opts);

  // parity
  CommonOpts parity_opts;
  parity_opts.exact = "poly,expcos";
  parity_opts.basis = "linear";
  CLI::App* parity = app.add_subcommand(
      "parity", "Global quadrature versus graded reference integration (linear BEM, square)");
  add_common(parity, parity_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (op->parsed()) return run_optimal_points(op_nodes, op_out, op_profile);
    if (sweep->parsed())
      return run_sweep_cmd(sweep_opts, sweep->count("--lambda") > 0, sweep_s_list, sweep_s_min,
                           sweep_s_max, sweep_s_count);
    if (table->parsed()) return run_table_cmd(table_opts, table->count("--lambda") > 0);
    if (compare->parsed())
      return run_compare_cmd(compare_opts,
                             compare->count("--h1") > 0 || compare->count("--h2") > 0,
                             compare->count("--lambda") > 0, compare->count("--elements") > 0);
    if (parity->parsed()) return run_parity_cmd(parity_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const radbem::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
