// Command-line driver: solve, refine, verify, baire, macneille, check23.
//
// Exit status: 0 success, 1 usage or input error, 2 when a certified
// inequality is violated or the construction itself fails.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ordcomp/baire.hpp"
#include "ordcomp/error.hpp"
#include "ordcomp/io.hpp"
#include "ordcomp/macneille.hpp"
#include "ordcomp/problem_file.hpp"
#include "ordcomp/subsolution.hpp"

namespace fs = std::filesystem;
using namespace ordcomp;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;
constexpr double kTargetAuditSamples = 1e5;

std::size_t samples_per_box(std::size_t requested, std::size_t boxes) {
  if (requested > 0) return requested;
  const auto spread = static_cast<std::size_t>(std::ceil(kTargetAuditSamples / static_cast<double>(std::max<std::size_t>(boxes, 1))));
  return std::max<std::size_t>(spread, 64);
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

void print_violations(const AuditReport& audit) {
  for (const Violation& v : audit.violations) {
    std::cerr << "violation: piece " << v.piece << " at x =";
    for (double c : v.x) std::cerr << ' ' << format_real(c);
    std::cerr << " residual " << format_real(v.residual) << '\n';
  }
}

struct CommonFlags {
  std::string problem;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

int run_solve(const CommonFlags& c, double eps, const std::string& side_text) {
  const PdeProblem problem = load_problem(c.problem);
  SolverOptions options;
  options.seed = c.seed;
  const Side side = parse_side(side_text);
  const PiecewiseSolution sol = assemble_global(problem, eps, side, options);
  const std::size_t spb = samples_per_box(c.samples, sol.pieces.size());
  const AuditReport audit = verify_certificate(problem, sol, spb, c.seed);

  const fs::path dir(c.out_dir);
  auto sol_out = open_out(dir / ("solution_" + side_text + ".txt"));
  write_solution(sol_out, sol);
  auto cert_out = open_out(dir / ("certificate_" + side_text + ".json"));
  cert_out << certificate_report(problem, sol, audit, spb).dump(2) << '\n';

  std::cout << "side " << side_text << " eps " << format_real(eps) << " boxes " << sol.pieces.size() << " samples "
            << audit.samples << " residual [" << format_real(audit.min_residual) << ", "
            << format_real(audit.max_residual) << "] violations " << audit.violation_count << " seed " << c.seed
            << '\n';
  print_violations(audit);
  return audit.passed() ? kOk : kViolation;
}

int run_refine(const CommonFlags& c, double eps0, std::size_t levels) {
  const PdeProblem problem = load_problem(c.problem);
  SolverOptions options;
  options.seed = c.seed;
  // Per-box audit size is fixed up front so every level gets the same treatment.
  const RefinementRun run = refine(problem, eps0, levels, c.samples > 0 ? c.samples : 256, options);
  auto csv = open_out(fs::path(c.out_dir) / "refine.csv");
  write_refine_csv(csv, run);
  write_refine_csv(std::cout, run);
  bool ok = true;
  for (const RefinementLevel& level : run.levels) {
    for (const RefinementSide* s : {&level.lower, &level.upper}) {
      print_violations(s->audit);
      if (!s->audit.passed() || s->sup_abs_residual > level.eps) ok = false;
      if (!s->residual_h_continuous) {
        std::cerr << "level " << level.level << ' ' << to_string(s->solution.side)
                  << ": assimilated residual is not H-continuous\n";
        ok = false;
      }
    }
  }
  return ok ? kOk : kViolation;
}

int run_verify(const CommonFlags& c, const std::string& solution_path, const std::string& report_path) {
  const PdeProblem problem = load_problem(c.problem);
  std::ifstream in(solution_path);
  if (!in) throw InvalidInput("cannot open solution file " + solution_path);
  const PiecewiseSolution sol = read_solution(in);
  if (sol.domain.dims() != problem.dims()) throw InvalidInput("solution and problem dimensions differ");
  const std::size_t spb = samples_per_box(c.samples, sol.pieces.size());
  const AuditReport audit = verify_certificate(problem, sol, spb, c.seed);
  if (!report_path.empty()) {
    auto out = open_out(report_path);
    out << certificate_report(problem, sol, audit, spb).dump(2) << '\n';
  }
  std::cout << "samples " << audit.samples << " residual [" << format_real(audit.min_residual) << ", "
            << format_real(audit.max_residual) << "] violations " << audit.violation_count << " seed " << c.seed
            << '\n';
  print_violations(audit);
  return audit.passed() ? kOk : kViolation;
}

int run_baire(const std::string& grid_path, const std::vector<double>& eps, const std::string& out_path) {
  std::ifstream in(grid_path);
  if (!in) throw InvalidInput("cannot open grid file " + grid_path);
  const GridIntervalFunction f = read_grid(in);
  const GridIntervalFunction completed = graph_completion(f, f.mask());
  std::cout << "input_h_continuous " << (is_h_continuous(f) ? "yes" : "no") << '\n';
  std::cout << "completion_h_continuous " << (is_h_continuous(completed) ? "yes" : "no") << '\n';
  std::cout << "completion_nearly_finite " << (is_nearly_finite(completed) ? "yes" : "no") << '\n';
  std::cout << format_report(discontinuity_report(completed, eps));
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_grid(out, completed);
  }
  return kOk;
}

int run_macneille(const std::string& poset_path, const std::string& dot_path) {
  std::ifstream in(poset_path);
  if (!in) throw InvalidInput("cannot open poset file " + poset_path);
  const FinitePoset poset = parse_poset(in);
  const CutLattice lattice = macneille_complete(poset);
  std::size_t adjoined = 0;
  for (std::size_t i = 0; i < lattice.size(); ++i) adjoined += lattice.is_adjoined(i) ? 1 : 0;
  std::cout << "elements " << poset.size() << " cuts " << lattice.size() << " adjoined " << adjoined << '\n';
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    std::cout << "cut " << i << ' ' << describe_set(poset, lattice[i].lower) << " | "
              << describe_set(poset, lattice[i].upper) << (lattice.is_adjoined(i) ? " adjoined" : "") << '\n';
  }
  if (!dot_path.empty()) {
    auto out = open_out(dot_path);
    write_lattice_dot(out, lattice);
  }
  return kOk;
}

int run_check23(const std::string& problem_path, std::size_t per_axis, std::size_t budget) {
  const PdeProblem problem = load_problem(problem_path);
  const std::vector<Point> points = probe_lattice(problem.domain, per_axis);
  const auto verdicts = check_condition_23(problem, points, budget);
  std::size_t failed = 0;
  for (const auto& v : verdicts) {
    std::cout << "x";
    for (double c : v.x) std::cout << ' ' << format_real(c);
    std::cout << " f " << format_real(v.rhs) << " range " << to_string(v.probe.range()) << " holds "
              << (v.holds ? "yes" : "no") << '\n';
    failed += v.holds ? 0 : 1;
  }
  std::cout << "points " << verdicts.size() << " failed " << failed << '\n';
  return failed == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order completion toolkit: piecewise polynomial subsolutions, Baire operators, MacNeille cuts"};
  app.require_subcommand(1);

  CommonFlags common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--problem", common.problem, "problem file")->required()->check(CLI::ExistingFile);
    sub->add_option("--samples", common.samples, "audit samples per box (0: about 1e5 in total)");
    sub->add_option("--seed", common.seed, "seed for audit points and the randomized jet search");
    sub->add_option("--out", common.out_dir, "output directory");
  };

  double eps = 0.0;
  std::string side = "lower";
  auto* solve = app.add_subcommand("solve", "build and audit a one-sided eps-solution");
  add_common(solve);
  solve->add_option("--eps", eps, "tolerance eps")->required()->check(CLI::PositiveNumber);
  solve->add_option("--side", side, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));

  double eps0 = 0.0;
  std::size_t levels = 4;
  auto* refine_cmd = app.add_subcommand("refine", "solutions for eps0, eps0/2, ... with assimilated residuals");
  add_common(refine_cmd);
  refine_cmd->add_option("--eps0", eps0, "initial tolerance")->required()->check(CLI::PositiveNumber);
  refine_cmd->add_option("--levels", levels, "number of levels")->check(CLI::Range(1, 30));

  std::string solution_path, report_path;
  auto* verify = app.add_subcommand("verify", "re-audit a solution file");
  add_common(verify);
  verify->add_option("--solution", solution_path, "solution file")->required()->check(CLI::ExistingFile);
  verify->add_option("--report", report_path, "write a JSON certificate report");

  std::string grid_path, grid_out;
  std::vector<double> levels_eps{1.0};
  auto* baire_cmd = app.add_subcommand("baire", "graph completion and discontinuity report of a grid function");
  baire_cmd->add_option("--grid", grid_path, "grid file")->required()->check(CLI::ExistingFile);
  baire_cmd->add_option("--eps", levels_eps, "levels for Gamma_eps")->delimiter(',');
  baire_cmd->add_option("--out", grid_out, "write the completed grid function");

  std::string poset_path, dot_path;
  auto* mac = app.add_subcommand("macneille", "Dedekind-MacNeille completion of a finite poset");
  mac->add_option("--poset", poset_path, "poset file")->required()->check(CLI::ExistingFile);
  mac->add_option("--dot", dot_path, "write the lattice as a dot graph");

  std::string check_problem;
  std::size_t per_axis = 9;
  std::size_t budget = 12;
  auto* check = app.add_subcommand("check23", "interior range condition at a lattice of probe points");
  check->add_option("--problem", check_problem, "problem file")->required()->check(CLI::ExistingFile);
  check->add_option("--points", per_axis, "probe points per axis")->check(CLI::Range(1, 1000));
  check->add_option("--budget", budget, "range probe doublings")->check(CLI::Range(2, 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return run_solve(common, eps, side);
    if (*refine_cmd) return run_refine(common, eps0, levels);
    if (*verify) return run_verify(common, solution_path, report_path);
    if (*baire_cmd) return run_baire(grid_path, levels_eps, grid_out);
    if (*mac) return run_macneille(poset_path, dot_path);
    if (*check) return run_check23(check_problem, per_axis, budget);
  } catch (const SolveFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
