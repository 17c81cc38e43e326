#include "ordcomp/subsolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/random/sobol.hpp>

#include "ordcomp/error.hpp"

namespace ordcomp {
namespace {

constexpr double kMinEps = 1e-10;
constexpr std::size_t kMaxReportedViolations = 16;

std::string describe_point(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + ")";
}

// Root of phi on the ray base + t e_pivot, searching outward from t = 0 so the
// root closest to the base jet wins. Returns the jet on success.
std::optional<Jet> solve_along(const std::function<double(const Jet&)>& g, Jet base, std::size_t pivot,
                               double tol, double limit) {
  const double t0 = base[pivot];
  auto phi = [&](double t) {
    base[pivot] = t0 + t;
    return g(base);
  };
  auto finish = [&](double t) {
    base[pivot] = t0 + t;
    return base;
  };
  const double f0 = phi(0.0);
  if (!std::isfinite(f0)) return std::nullopt;
  if (std::fabs(f0) <= tol) return finish(0.0);

  double prev[2] = {0.0, 0.0};
  double fprev[2] = {f0, f0};
  for (double s = 1.0; s <= limit; s *= 2.0) {
    for (int dir = 0; dir < 2; ++dir) {
      const double t = dir == 0 ? s : -s;
      const double ft = phi(t);
      if (!std::isfinite(ft)) continue;
      if (std::fabs(ft) <= tol) return finish(t);
      if ((ft > 0) == (fprev[dir] > 0)) {
        prev[dir] = t;
        fprev[dir] = ft;
        continue;
      }
      double a = std::min(prev[dir], t), b = std::max(prev[dir], t);
      double fa = a == prev[dir] ? fprev[dir] : ft, fb = b == t ? ft : fprev[dir];
      std::uintmax_t iters = 300;
      const auto bracket = boost::math::tools::toms748_solve(
          phi, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2),
          iters);
      a = bracket.first;
      b = bracket.second;
      fa = phi(a);
      fb = phi(b);
      // Finish by bisection if the polish stopped short of the residual tolerance.
      for (int k = 0; k < 200 && std::fabs(fa) > tol && std::fabs(fb) > tol; ++k) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = phi(m);
        if (!std::isfinite(fm)) break;
        if ((fm > 0) == (fa > 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
          fb = fm;
        }
      }
      if (std::fabs(fa) <= tol || std::fabs(fb) <= tol) return finish(std::fabs(fa) <= std::fabs(fb) ? a : b);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool in_band(double lo, double hi, double band_lo, double band_hi) { return lo >= band_lo && hi <= band_hi; }

// k points per axis over [a, b] including both ends; k = 1 gives the midpoint.
double lattice_coordinate(double a, double b, std::size_t i, std::size_t k) {
  if (k == 1) return 0.5 * (a + b);
  return a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1);
}

template <class Visit>
void for_each_lattice_point(const Point& lo, const Point& hi, std::size_t k, bool interior, Visit&& visit) {
  const std::size_t n = lo.size();
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) total *= k;
  Point x(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t a = n; a-- > 0;) {
      const std::size_t i = rest % k;
      rest /= k;
      x[a] = interior ? lo[a] + (hi[a] - lo[a]) * (static_cast<double>(i) + 0.5) / static_cast<double>(k)
                      : lattice_coordinate(lo[a], hi[a], i, k);
    }
    visit(x);
  }
}

std::pair<double, double> residual_range_interior(const PdeProblem& problem, const Polynomial& poly, const Box& box,
                                                  std::size_t samples) {
  const std::size_t n = box.dims();
  std::size_t k = 1;
  while (static_cast<double>(std::pow(static_cast<double>(k), static_cast<double>(n))) < static_cast<double>(samples)) ++k;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool bad = false;
  for_each_lattice_point(box.lower(), box.upper(), k, true, [&](const Point& x) {
    const double r = residual(problem, poly, x);
    if (std::isnan(r)) bad = true;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  });
  if (bad) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  return {lo, hi};
}

double node_tolerance(const Box& box) {
  double scale = std::max(1.0, box.diagonal());
  for (std::size_t a = 0; a < box.dims(); ++a)
    scale = std::max({scale, std::fabs(box.lower()[a]), std::fabs(box.upper()[a])});
  return 1e-12 * scale;
}

const SolutionPiece* piece_containing_closed(const PiecewiseSolution& s, std::span<const double> x) {
  const Point p(x.begin(), x.end());
  for (const auto& piece : s.pieces)
    if (piece.box.contains(p)) return &piece;
  return nullptr;
}

}  // namespace

std::string to_string(Side side) { return side == Side::lower ? "lower" : "upper"; }

Side parse_side(const std::string& text) {
  if (text == "lower") return Side::lower;
  if (text == "upper") return Side::upper;
  throw InvalidInput("side must be 'lower' or 'upper', got '" + text + "'");
}

std::pair<double, double> side_band(Side side, double eps) {
  return side == Side::lower ? std::pair{-eps, 0.0} : std::pair{0.0, eps};
}

double jet_tolerance(double target) { return 1e-10 * (1.0 + std::fabs(target)); }

double verification_slack(double eps) { return std::max(1e-12, eps / 64.0); }

std::size_t verification_points_per_axis(std::size_t dims) {
  const double need = 27.0 * std::pow(3.0, static_cast<double>(dims));
  std::size_t k = 2;
  while (std::pow(static_cast<double>(k), static_cast<double>(dims)) < need) ++k;
  return k;
}

Jet jet_solve(const PdeProblem& problem, std::span<const double> x0, double target, const SolverOptions& options) {
  problem.validate();
  const MultiIndexSet& idx = problem.indices;
  const std::size_t d = idx.size();
  const double tol = jet_tolerance(target);
  const std::function<double(const Jet&)> g = [&](const Jet& jet) { return problem.F(x0, jet) - target; };

  std::vector<std::size_t> pivots;
  auto add_pivot = [&](std::size_t i) {
    if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) pivots.push_back(i);
  };
  for (std::size_t a = 0; a < idx.dims(); ++a) add_pivot(idx.pure_index(a, idx.order()));
  for (std::size_t i = d; i-- > 0;) add_pivot(i);

  for (std::size_t pivot : pivots) {
    if (auto jet = solve_along(g, Jet(d, 0.0), pivot, tol, options.bracket_limit)) return *jet;
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t r = 0; r < options.random_starts; ++r) {
    const double K = std::ldexp(1.0, static_cast<int>(r % 8));
    std::uniform_real_distribution<double> coord(-K, K);
    Jet base(d);
    for (double& v : base) v = coord(rng);
    const std::size_t pivot = std::uniform_int_distribution<std::size_t>(0, d - 1)(rng);
    if (auto jet = solve_along(g, base, pivot, tol, options.bracket_limit)) return *jet;
  }
  throw SolveFailure("no jet with F = " + std::to_string(target) + " found at x = " + describe_point(x0) +
                     " (the range condition may fail there)");
}

std::pair<double, double> residual_range_on_ball(const PdeProblem& problem, const Polynomial& poly,
                                                 std::span<const double> center, double radius) {
  const Box& dom = problem.domain;
  const std::size_t n = dom.dims();
  Point lo(n), hi(n);
  for (std::size_t a = 0; a < n; ++a) {
    lo[a] = std::max(dom.lower()[a], center[a] - radius);
    hi[a] = std::min(dom.upper()[a], center[a] + radius);
  }
  double rlo = std::numeric_limits<double>::infinity();
  double rhi = -rlo;
  bool bad = false;
  for_each_lattice_point(lo, hi, verification_points_per_axis(n), false, [&](const Point& x) {
    const double r = residual(problem, poly, x);
    if (std::isnan(r)) bad = true;
    rlo = std::min(rlo, r);
    rhi = std::max(rhi, r);
  });
  if (bad) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  return {rlo, rhi};
}

LocalPatch local_patch(const PdeProblem& problem, std::span<const double> x0, double eps, Side side,
                       double initial_radius, const SolverOptions& options) {
  problem.validate();
  if (!(eps >= kMinEps)) throw InvalidInput("eps must be at least 1e-10");
  const double target = problem.f(x0) + (side == Side::lower ? -0.5 * eps : 0.5 * eps);
  const Jet jet = jet_solve(problem, x0, target, options);
  LocalPatch patch;
  patch.center.assign(x0.begin(), x0.end());
  patch.poly = Polynomial::from_jet(patch.center, problem.indices, jet);
  patch.side = side;
  patch.eps = eps;

  const auto [band_lo, band_hi] = side_band(side, eps);
  const double slack = verification_slack(eps);
  const double floor = 1e-8 * problem.domain.diagonal();
  for (double r = initial_radius > 0.0 ? initial_radius : 0.5 * problem.domain.diagonal(); r >= floor; r *= 0.5) {
    const auto [lo, hi] = residual_range_on_ball(problem, patch.poly, x0, r);
    if (in_band(lo, hi, band_lo + slack, band_hi - slack)) {
      patch.delta = r;
      patch.min_residual = lo;
      patch.max_residual = hi;
      return patch;
    }
  }
  throw SolveFailure("patch radius fell below 1e-8 of the domain diagonal at x = " + describe_point(x0));
}

const SolutionPiece* PiecewiseSolution::piece_at(std::span<const double> x) const {
  const Point p(x.begin(), x.end());
  for (const auto& piece : pieces)
    if (piece.box.contains_interior(p)) return &piece;
  return nullptr;
}

std::optional<double> PiecewiseSolution::value(std::span<const double> x) const {
  const SolutionPiece* p = piece_at(x);
  if (!p) return std::nullopt;
  return p->poly(x);
}

std::optional<double> PiecewiseSolution::residual(const PdeProblem& problem, std::span<const double> x) const {
  const SolutionPiece* p = piece_at(x);
  if (!p) return std::nullopt;
  return ordcomp::residual(problem, p->poly, x);
}

SkeletonSet partition_skeleton(const Box& domain, const std::vector<Box>& boxes) {
  std::vector<SkeletonFace> faces;
  for (const Box& b : boxes) {
    for (std::size_t a = 0; a < b.dims(); ++a) {
      for (double c : {b.lower()[a], b.upper()[a]}) {
        if (c <= domain.lower()[a] || c >= domain.upper()[a]) continue;
        // Collapse the face's own axis so faces shared by neighbouring boxes compare equal.
        SkeletonFace face{a, c, b.lower(), b.upper()};
        face.lower[a] = face.upper[a] = c;
        if (std::find(faces.begin(), faces.end(), face) == faces.end()) faces.push_back(std::move(face));
      }
    }
  }
  return SkeletonSet(std::move(faces));
}

PiecewiseSolution assemble_global(const PdeProblem& problem, double eps, Side side, const SolverOptions& options) {
  problem.validate();
  if (!(eps >= kMinEps)) throw InvalidInput("eps must be at least 1e-10");
  const auto [band_lo, band_hi] = side_band(side, eps);
  const double slack = verification_slack(eps);

  PiecewiseSolution sol;
  sol.domain = problem.domain;
  sol.eps = eps;
  sol.side = side;

  struct Task {
    Box box;
    std::size_t depth;
  };
  std::vector<Task> stack{{problem.domain, 0}};
  while (!stack.empty()) {
    Task t = std::move(stack.back());
    stack.pop_back();
    const Point c = t.box.center();
    const double target = problem.f(c) + (side == Side::lower ? -0.5 * eps : 0.5 * eps);
    const Polynomial poly = Polynomial::from_jet(c, problem.indices, jet_solve(problem, c, target, options));
    const double half = 0.5 * t.box.max_side();
    const auto [lo, hi] = residual_range_on_ball(problem, poly, c, half);
    if (in_band(lo, hi, band_lo + slack, band_hi - slack)) {
      const auto [clo, chi] = residual_range_interior(problem, poly, t.box, options.certificate_samples);
      if (in_band(clo, chi, band_lo, band_hi)) {
        sol.pieces.push_back({t.box, half, poly, std::min(lo, clo), std::max(hi, chi)});
        sol.depth = std::max(sol.depth, t.depth);
        continue;
      }
    }
    if (t.depth + 1 > options.max_depth) {
      throw SolveFailure("bisection depth exceeded " + std::to_string(options.max_depth) + " near x = " +
                         describe_point(c));
    }
    // Halve every axis that is longer than half the longest side.
    const std::size_t n = t.box.dims();
    std::vector<std::size_t> axes;
    for (std::size_t a = 0; a < n; ++a)
      if (t.box.side(a) > 0.5 * t.box.max_side()) axes.push_back(a);
    const std::size_t children = std::size_t{1} << axes.size();
    // Push in reverse so pieces come out in lexicographic order.
    for (std::size_t k = children; k-- > 0;) {
      Point lo_c = t.box.lower(), hi_c = t.box.upper();
      for (std::size_t j = 0; j < axes.size(); ++j) {
        const std::size_t a = axes[j];
        const double mid = c[a];
        if ((k >> (axes.size() - 1 - j)) & 1u) lo_c[a] = mid;
        else hi_c[a] = mid;
      }
      stack.push_back({Box(lo_c, hi_c), t.depth + 1});
    }
  }
  std::vector<Box> boxes;
  boxes.reserve(sol.pieces.size());
  for (const auto& p : sol.pieces) boxes.push_back(p.box);
  sol.skeleton = partition_skeleton(problem.domain, boxes);
  return sol;
}

PiecewiseSolution single_piece(const PdeProblem& problem, const Polynomial& poly, double eps, Side side) {
  problem.validate();
  PiecewiseSolution sol;
  sol.domain = problem.domain;
  sol.eps = eps;
  sol.side = side;
  const auto [lo, hi] = residual_range_interior(problem, poly, problem.domain, 64);
  sol.pieces.push_back({problem.domain, 0.5 * problem.domain.max_side(), poly, lo, hi});
  return sol;
}

AuditReport verify_certificate(const PdeProblem& problem, const PiecewiseSolution& solution,
                               std::size_t samples_per_box, std::uint64_t seed) {
  AuditReport report;
  report.seed = seed;
  report.min_residual = std::numeric_limits<double>::infinity();
  report.max_residual = -std::numeric_limits<double>::infinity();
  if (solution.pieces.empty()) {
    report.min_residual = report.max_residual = 0.0;
    return report;
  }
  const std::size_t n = solution.domain.dims();
  const auto [band_lo, band_hi] = side_band(solution.side, solution.eps);

  // Sobol points under a seeded Cranley-Patterson rotation.
  boost::random::sobol qrng(n);
  const double scale = 1.0 / (static_cast<double>(qrng.max()) + 1.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point shift(n);
  for (double& s : shift) s = unit(rng);

  Point x(n);
  for (std::size_t pi = 0; pi < solution.pieces.size(); ++pi) {
    const SolutionPiece& piece = solution.pieces[pi];
    double plo = std::numeric_limits<double>::infinity();
    double phi = -plo;
    for (std::size_t s = 0; s < samples_per_box;) {
      bool inside = true;
      for (std::size_t a = 0; a < n; ++a) {
        const double u = std::fmod(scale * static_cast<double>(qrng()) + shift[a], 1.0);
        x[a] = piece.box.lower()[a] + u * piece.box.side(a);
        inside = inside && x[a] > piece.box.lower()[a] && x[a] < piece.box.upper()[a];
      }
      if (!inside) continue;
      ++s;
      const double r = residual(problem, piece.poly, x);
      ++report.samples;
      plo = std::min(plo, r);
      phi = std::max(phi, r);
      if (!(r >= band_lo && r <= band_hi)) {
        ++report.violation_count;
        if (report.violations.size() < kMaxReportedViolations) report.violations.push_back({pi, x, r});
      }
    }
    report.piece_ranges.emplace_back(plo, phi);
    report.min_residual = std::min(report.min_residual, plo);
    report.max_residual = std::max(report.max_residual, phi);
  }
  return report;
}

Mask off_skeleton_mask(const GridDomain& grid, const SkeletonSet& skeleton) {
  return skeleton.node_mask(grid, node_tolerance(grid.box()));
}

GridIntervalFunction residual_grid(const PdeProblem& problem, const PiecewiseSolution& solution,
                                   const GridDomain& grid) {
  return GridIntervalFunction::sample(
      grid,
      [&](const Point& x) {
        const SolutionPiece* p = piece_containing_closed(solution, x);
        return p ? ordcomp::residual(problem, p->poly, x) : 0.0;
      },
      off_skeleton_mask(grid, solution.skeleton));
}

GridIntervalFunction solution_grid(const PiecewiseSolution& solution, const GridDomain& grid) {
  return GridIntervalFunction::sample(
      grid,
      [&](const Point& x) {
        const SolutionPiece* p = piece_containing_closed(solution, x);
        return p ? p->poly(x) : 0.0;
      },
      off_skeleton_mask(grid, solution.skeleton));
}

GridDomain refinement_grid(const Box& domain) {
  static constexpr std::size_t kResolution[] = {0, 1001, 101, 31};
  return GridDomain(domain, kResolution[domain.dims()]);
}

RefinementRun refine(const PdeProblem& problem, double eps0, std::size_t levels, std::size_t samples_per_box,
                     const SolverOptions& options) {
  if (levels == 0) throw InvalidInput("refine needs at least one level");
  RefinementRun run;
  run.grid = refinement_grid(problem.domain);
  for (std::size_t k = 0; k < levels; ++k) {
    RefinementLevel level;
    level.level = k;
    level.eps = std::ldexp(eps0, -static_cast<int>(k));
    for (Side side : {Side::lower, Side::upper}) {
      RefinementSide& out = side == Side::lower ? level.lower : level.upper;
      out.solution = assemble_global(problem, level.eps, side, options);
      out.audit = verify_certificate(problem, out.solution, samples_per_box, options.seed + k);
      const GridIntervalFunction r = residual_grid(problem, out.solution, run.grid);
      out.assimilated_residual = assimilate_f0(r);
      out.residual_h_continuous = is_h_continuous(out.assimilated_residual);
      double sup = std::max(std::fabs(out.audit.min_residual), std::fabs(out.audit.max_residual));
      double widest = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r.masked(i)) sup = std::max(sup, std::fabs(r[i].lo().value()));
        widest = std::max(widest, width(out.assimilated_residual[i]).value());
      }
      out.sup_abs_residual = sup;
      out.assimilated_max_width = widest;
    }
    run.levels.push_back(std::move(level));
  }
  return run;
}

}  // namespace ordcomp
