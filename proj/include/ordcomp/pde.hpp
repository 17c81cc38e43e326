#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ordcomp/grid.hpp"
#include "ordcomp/multi_index.hpp"
#include "ordcomp/order.hpp"

namespace ordcomp {

/// F(x, jet). Must be pure, reentrant and continuous on the closed domain box.
using OperatorFn = std::function<double(std::span<const double> x, std::span<const double> jet)>;
/// f(x). Same contract as OperatorFn.
using RhsFn = std::function<double(std::span<const double> x)>;

/**
 * Polynomial in Taylor form around a center: P(x) = sum_p c_p (x - center)^p
 * over the multi-indices of its term set, so its degree is the set's order.
 */
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(Point center, MultiIndexSet terms, std::vector<double> coefficients);

  /// The polynomial whose derivatives at `center` are the jet entries (c_p = xi_p / p!).
  static Polynomial from_jet(Point center, const MultiIndexSet& indices, std::span<const double> jet);

  const Point& center() const noexcept { return center_; }
  const MultiIndexSet& terms() const noexcept { return terms_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  std::size_t degree() const noexcept { return terms_.order(); }

  double operator()(std::span<const double> x) const;
  /// D^q P(x), computed term by term from the coefficients.
  double derivative(const MultiIndex& q, std::span<const double> x) const;

  Polynomial with_coefficient(std::size_t slot, double value) const;

private:
  Point center_;
  MultiIndexSet terms_;
  std::vector<double> coefficients_;
};

/// Derivatives D^p P(x) for every p of `jet_indices`.
Jet poly_jet_at(const Polynomial& p, const MultiIndexSet& jet_indices, std::span<const double> x);
/// Derivatives for every p of the polynomial's own term set.
Jet poly_jet_at(const Polynomial& p, std::span<const double> x);

/// T(x, D) U = F(x, U, ..., D^p U, ...) = f on the open box.
struct PdeProblem {
  Box domain;
  MultiIndexSet indices;
  OperatorFn F;
  RhsFn f;
  /// Human-readable sources of F and f, used in reports only.
  std::string operator_text;
  std::string rhs_text;

  std::size_t dims() const noexcept { return domain.dims(); }
  void validate() const;
};

/// T(x, D) P at x.
double apply_operator(const PdeProblem& problem, const Polynomial& p, std::span<const double> x);
/// T(x, D) P(x) - f(x).
double residual(const PdeProblem& problem, const Polynomial& p, std::span<const double> x);

/// Inner enclosure of the range of F(x, .) with flags for sides that kept growing.
struct RangeProbe {
  double lo = 0.0;
  double hi = 0.0;
  bool unbounded_below = false;
  bool unbounded_above = false;
  std::size_t samples = 0;
  double box_half_width = 0.0;  // K of the last sampling box

  /// The enclosure with flagged sides opened to infinity.
  ExtInterval range() const;
};

/**
 * Samples F(x, jet) over the nested jet boxes [-K, K]^d for K = 1, 2, 4, ...
 * (`budget` doublings). Each step adds the origin, 33 points along every jet
 * axis and 256 Sobol points, so enclosures grow monotonically with the budget.
 * A side is flagged unbounded when its extremum still moved by at least
 * half of (1 + |previous|) in the last step. Requires budget >= 2.
 */
RangeProbe range_probe(const PdeProblem& problem, std::span<const double> x, std::size_t budget = 12);

struct Condition23Verdict {
  Point x;
  double rhs = 0.0;
  RangeProbe probe;
  double margin = 0.0;
  bool holds = false;
};

/// Default interior margin 1e-6 * (1 + |f(x)|).
double condition23_margin(double rhs);

/// f(x) lies inside the probed range of F(x, .), at least `condition23_margin`
/// away from every side that is not flagged unbounded.
std::vector<Condition23Verdict> check_condition_23(const PdeProblem& problem, std::span<const Point> points,
                                                   std::size_t budget = 12);

/// `per_axis`^n points at the nodes of an interior lattice of the box.
std::vector<Point> probe_lattice(const Box& box, std::size_t per_axis);

}  // namespace ordcomp
