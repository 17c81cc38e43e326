#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordcomp/baire.hpp"
#include "ordcomp/grid.hpp"
#include "ordcomp/pde.hpp"

namespace ordcomp {

/// Which one-sided inequality a solution certifies:
/// lower: f - eps <= T U <= f, upper: f <= T U <= f + eps.
enum class Side { lower, upper };

std::string to_string(Side side);
Side parse_side(const std::string& text);

/// Residual band [lo, hi] a side allows for a given eps.
std::pair<double, double> side_band(Side side, double eps);

struct SolverOptions {
  std::size_t probe_budget = 12;
  /// Largest |jet entry| tried while bracketing a root.
  double bracket_limit = 1e12;
  std::size_t random_starts = 64;
  std::uint64_t seed = 1;
  std::size_t max_depth = 20;
  /// Samples per box for the certificate recorded at assembly.
  std::size_t certificate_samples = 64;
};

/**
 * Jet xi at x0 with |F(x0, xi) - target| <= 1e-10 (1 + |target|).
 *
 * All entries but one pivot stay 0; the pivot runs through the pure
 * derivatives of highest order first, then the rest of the index set. If no
 * pivot brackets a root, seeded random base jets are tried. Throws
 * SolveFailure when nothing brackets.
 */
Jet jet_solve(const PdeProblem& problem, std::span<const double> x0, double target,
              const SolverOptions& options = {});

double jet_tolerance(double target);

/// Safety slack kept inside the residual band during verification.
double verification_slack(double eps);

/// Points per axis of a verification lattice: k^n >= 27 * 3^n.
std::size_t verification_points_per_axis(std::size_t dims);

struct LocalPatch {
  Point center;
  double delta = 0.0;  // Chebyshev radius
  Polynomial poly;
  Side side = Side::lower;
  double eps = 0.0;
  double min_residual = 0.0;
  double max_residual = 0.0;
};

/// Residual range of `poly` on a verification lattice of the region, which is
/// the Chebyshev ball of `radius` around `center` clipped to the domain.
std::pair<double, double> residual_range_on_ball(const PdeProblem& problem, const Polynomial& poly,
                                                 std::span<const double> center, double radius);

/**
 * Patch at x0: Taylor polynomial of a jet with F(x0, jet) = f(x0) -+ eps/2,
 * and the largest radius delta = initial / 2^k on whose lattice the residual
 * stays in the side's band shrunk by the slack. A non-positive
 * `initial_radius` means half the domain diagonal. Throws SolveFailure when
 * delta drops below 1e-8 of the domain diagonal.
 */
LocalPatch local_patch(const PdeProblem& problem, std::span<const double> x0, double eps, Side side,
                       double initial_radius = 0.0, const SolverOptions& options = {});

struct SolutionPiece {
  Box box;
  double delta = 0.0;
  Polynomial poly;  // centered at the box center
  double min_residual = 0.0;
  double max_residual = 0.0;
};

/// Piecewise polynomial U_eps: pieces on box interiors, undefined on the skeleton.
struct PiecewiseSolution {
  Box domain;
  double eps = 0.0;
  Side side = Side::lower;
  std::vector<SolutionPiece> pieces;
  SkeletonSet skeleton;
  std::size_t depth = 0;

  /// Piece whose open box contains x, if any.
  const SolutionPiece* piece_at(std::span<const double> x) const;
  /// U_eps(x), or nothing on the skeleton.
  std::optional<double> value(std::span<const double> x) const;
  std::optional<double> residual(const PdeProblem& problem, std::span<const double> x) const;
};

/// Skeleton of a partition: box faces that are not on the domain boundary.
SkeletonSet partition_skeleton(const Box& domain, const std::vector<Box>& boxes);

/**
 * Recursive bisection of the domain until, on each box, the patch anchored at
 * the box center verifies on the Chebyshev ball reaching the box corners.
 * Rejects eps < 1e-10; throws SolveFailure beyond `max_depth`.
 */
PiecewiseSolution assemble_global(const PdeProblem& problem, double eps, Side side, const SolverOptions& options = {});

/// A single polynomial on the whole domain, no skeleton.
PiecewiseSolution single_piece(const PdeProblem& problem, const Polynomial& poly, double eps, Side side);

struct Violation {
  std::size_t piece = 0;
  Point x;
  double residual = 0.0;
};

struct AuditReport {
  std::size_t samples = 0;
  double min_residual = 0.0;
  double max_residual = 0.0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first few
  std::vector<std::pair<double, double>> piece_ranges;
  std::uint64_t seed = 0;

  bool passed() const noexcept { return violation_count == 0; }
};

/**
 * Fresh audit: Sobol points shifted by a seeded offset, strictly inside every
 * box, checked exactly against the side's band [-eps, 0] or [0, eps].
 */
AuditReport verify_certificate(const PdeProblem& problem, const PiecewiseSolution& solution,
                               std::size_t samples_per_box, std::uint64_t seed = 1);

/// Nodes off the skeleton; nodes within 1e-12 of a face (scaled) are excluded.
Mask off_skeleton_mask(const GridDomain& grid, const SkeletonSet& skeleton);

/// Residual samples on the grid; nodes on the skeleton are excluded from the mask.
GridIntervalFunction residual_grid(const PdeProblem& problem, const PiecewiseSolution& solution,
                                   const GridDomain& grid);
/// U_eps samples on the grid, masked like residual_grid.
GridIntervalFunction solution_grid(const PiecewiseSolution& solution, const GridDomain& grid);

struct RefinementSide {
  PiecewiseSolution solution;
  AuditReport audit;
  GridIntervalFunction assimilated_residual;
  bool residual_h_continuous = false;
  double sup_abs_residual = 0.0;
  double assimilated_max_width = 0.0;
};

struct RefinementLevel {
  std::size_t level = 0;
  double eps = 0.0;
  RefinementSide lower;
  RefinementSide upper;
};

struct RefinementRun {
  GridDomain grid;
  std::vector<RefinementLevel> levels;
};

/// Grid used by refine: about 1000 nodes per axis in 1-D, 101 in 2-D, 31 in 3-D.
GridDomain refinement_grid(const Box& domain);

/// eps_k = eps0 / 2^k for k < levels; lower and upper solutions, audits and
/// assimilated residual envelopes per level.
RefinementRun refine(const PdeProblem& problem, double eps0, std::size_t levels, std::size_t samples_per_box,
                     const SolverOptions& options = {});

}  // namespace ordcomp
