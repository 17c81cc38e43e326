#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ordcomp/grid.hpp"

namespace ordcomp {

// Discrete Baire calculus on grids.
//
// A dense mask D turns the grid into a finite topological space: a node of D
// is an open point, and the smallest open neighborhood of any other node is
// the node together with the nearest Chebyshev ball that meets D. The
// operators below evaluate the sup-inf / inf-sup over shrinking balls
// literally in that space, so on a node of D the smallest ball is the node
// itself and on an excluded node it is the ring of D-neighbors.

/// Nodes of the smallest clipped Chebyshev ball around `node` that meets D,
/// intersected with D. Throws NotDense when no ball meets D.
std::vector<std::size_t> dense_ball(const GridDomain& domain, const Mask& D, std::size_t node);

/// Smallest open neighborhood of `node`: the node plus dense_ball.
std::vector<std::size_t> minimal_neighborhood(const GridDomain& domain, const Mask& D, std::size_t node);

/// Lower Baire operator I(D, f): point-valued, carries mask D.
GridIntervalFunction baire_lower(const GridIntervalFunction& f, const Mask& D);
/// Upper Baire operator S(D, f): point-valued, carries mask D.
GridIntervalFunction baire_upper(const GridIntervalFunction& f, const Mask& D);
/// Graph completion F(D, f) = [I(D, f), S(D, f)], carries mask D.
GridIntervalFunction graph_completion(const GridIntervalFunction& f, const Mask& D);

struct BaireResult {
  GridIntervalFunction lower;
  GridIntervalFunction upper;
  GridIntervalFunction completed;
};

BaireResult baire(const GridIntervalFunction& f, const Mask& D);

/**
 * Hausdorff continuity test.
 *
 * The determining set is D = f.mask() restricted to nodes with point values.
 * f is H-continuous iff D is dense and both extreme endpoint selections
 * graph-complete back to f over D.
 */
bool is_h_continuous(const GridIntervalFunction& f);

/// H-continuous f whose finite nodes contain an open dense node set.
bool is_nearly_finite(const GridIntervalFunction& f);

enum class Endpoint { lower, upper };

/// The chosen endpoint function is constant on the minimal neighborhood of `node`.
bool endpoint_continuous_at(const GridIntervalFunction& f, Endpoint which, const Mask& D, std::size_t node);
/// Lower endpoint at `node` does not exceed its value anywhere on the minimal neighborhood.
bool lower_semicontinuous_at(const GridIntervalFunction& f, const Mask& D, std::size_t node);
/// Upper endpoint at `node` is not exceeded anywhere on the minimal neighborhood.
bool upper_semicontinuous_at(const GridIntervalFunction& f, const Mask& D, std::size_t node);

/// Closure of a node set: nodes whose minimal neighborhood meets the set.
Mask discrete_closure(const GridDomain& domain, const Mask& D, const Mask& set);
bool is_discretely_closed(const GridDomain& domain, const Mask& D, const Mask& set);

struct DiscontinuityLevel {
  double eps = 0.0;
  std::vector<std::size_t> nodes;  // Gamma_eps(f): width >= eps
  bool nowhere_dense = true;
  bool closed = true;
  ExtReal max_width;
};

struct DiscontinuityReport {
  std::vector<std::size_t> gamma_nodes;  // width > 0
  std::vector<DiscontinuityLevel> levels;
};

/// Gamma(f) and Gamma_eps(f) for each eps > 0, with closedness and
/// nowhere-density verdicts taken in the topology of f's determining set.
DiscontinuityReport discontinuity_report(const GridIntervalFunction& f, std::span<const double> eps_list);

/// One line per level: "eps <e> nodes <n> nowhere_dense <yes|no> closed <yes|no> max_width <w>".
std::string format_report(const DiscontinuityReport& report);

/// Assimilation of a piecewise continuous function: graph completion over its
/// own dense mask. Requires finite point values on the mask.
GridIntervalFunction assimilate_f0(const GridIntervalFunction& u);

/**
 * Instance check of dense determination: if f = g on D and both are
 * recovered from their D-values by graph completion, then f = g everywhere.
 * Returns false only on a counterexample; a false premise returns true.
 */
bool dense_determination_check(const GridIntervalFunction& f, const GridIntervalFunction& g, const Mask& D);

/// Supremum / infimum of a finite family inside the H-continuous functions:
/// pointwise join (meet) recompleted over the common determining set.
GridIntervalFunction h_supremum(std::span<const GridIntervalFunction> family);
GridIntervalFunction h_infimum(std::span<const GridIntervalFunction> family);

}  // namespace ordcomp
