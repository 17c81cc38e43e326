#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ordcomp/order.hpp"

namespace ordcomp {

using Point = std::vector<double>;
/// Per-node membership flags of a grid; `true` marks a node of the dense set.
using Mask = std::vector<bool>;

/// Closed axis-aligned box [lower, upper] with finite corners and lower < upper on every axis.
class Box {
public:
  Box() = default;
  Box(Point lower, Point upper);

  std::size_t dims() const noexcept { return lower_.size(); }
  const Point& lower() const noexcept { return lower_; }
  const Point& upper() const noexcept { return upper_; }
  double side(std::size_t axis) const { return upper_[axis] - lower_[axis]; }
  double max_side() const;
  /// Euclidean length of the main diagonal.
  double diagonal() const;
  Point center() const;
  bool contains(const Point& x) const;           // closed box
  bool contains_interior(const Point& x) const;  // open box

  friend bool operator==(const Box&, const Box&) = default;

private:
  Point lower_;
  Point upper_;
};

/**
 * Uniform lattice in the interior of an open box.
 *
 * An axis of resolution N carries the nodes lower + (i + 1) * h, i = 0..N-1,
 * with h = (upper - lower) / (N + 1); the box faces carry no nodes. Nodes are
 * numbered row-major with the last axis varying fastest.
 */
class GridDomain {
public:
  static constexpr std::size_t kMaxDims = 3;
  using NodeIndex = std::array<std::size_t, kMaxDims>;

  GridDomain() = default;
  GridDomain(Box box, std::vector<std::size_t> resolution);
  GridDomain(Box box, std::size_t resolution);

  const Box& box() const noexcept { return box_; }
  std::size_t dims() const noexcept { return box_.dims(); }
  const std::vector<std::size_t>& resolution() const noexcept { return resolution_; }
  std::size_t node_count() const noexcept { return node_count_; }

  double spacing(std::size_t axis) const;
  double coordinate(std::size_t axis, std::size_t index) const;
  Point node_point(std::size_t node) const;
  NodeIndex unflatten(std::size_t node) const;
  std::size_t flatten(const NodeIndex& index) const;

  /// Visits every node of the Chebyshev ball of `radius` cells around `node`,
  /// clipped to the grid, including `node` itself.
  void for_each_in_ball(std::size_t node, std::size_t radius, const std::function<void(std::size_t)>& visit) const;

  /// Visits every grid cell (2^dims adjacent nodes) with the list of its node ids.
  void for_each_cell(const std::function<void(const std::vector<std::size_t>&)>& visit) const;

  friend bool operator==(const GridDomain& a, const GridDomain& b) {
    return a.box_ == b.box_ && a.resolution_ == b.resolution_;
  }

private:
  Box box_;
  std::vector<std::size_t> resolution_;
  std::size_t node_count_ = 0;
};

Mask full_mask(const GridDomain& domain);
/// Discrete nowhere-density: no grid cell has all of its nodes excluded.
bool is_dense(const GridDomain& domain, const Mask& mask);
/// Throws NotDense naming the first fully excluded cell.
void require_dense(const GridDomain& domain, const Mask& mask, const std::string& context);
Mask mask_and(const Mask& a, const Mask& b);

/**
 * Interval-valued function sampled on a grid, together with the dense node
 * set on which it is known. Values at excluded nodes are kept but are not
 * considered reliable.
 */
class GridIntervalFunction {
public:
  GridIntervalFunction() = default;
  /// Throws InvalidInput on size mismatch and NotDense if the mask excludes a full cell.
  GridIntervalFunction(GridDomain domain, std::vector<ExtInterval> values, Mask mask);
  GridIntervalFunction(GridDomain domain, std::vector<ExtInterval> values);

  static GridIntervalFunction constant(const GridDomain& domain, const ExtInterval& value);
  /// Point-valued samples fn(node) at every node; an empty mask means all nodes.
  static GridIntervalFunction sample(const GridDomain& domain, const std::function<double(const Point&)>& fn,
                                     Mask mask = {});

  const GridDomain& domain() const noexcept { return domain_; }
  const std::vector<ExtInterval>& values() const noexcept { return values_; }
  const Mask& mask() const noexcept { return mask_; }
  std::size_t size() const noexcept { return values_.size(); }
  const ExtInterval& operator[](std::size_t node) const { return values_[node]; }
  bool masked(std::size_t node) const { return mask_[node]; }

  bool point_valued_on_mask() const;
  /// Mask restricted to the nodes where the value is a degenerate interval.
  Mask degenerate_mask() const;

  /// The lower / upper endpoint functions as point-valued grid functions.
  GridIntervalFunction lower_selection() const;
  GridIntervalFunction upper_selection() const;
  GridIntervalFunction with_mask(Mask mask) const;

private:
  GridDomain domain_;
  std::vector<ExtInterval> values_;
  Mask mask_;
};

/// Node values equal everywhere (masks are ignored).
bool same_values(const GridIntervalFunction& f, const GridIntervalFunction& g);

/// Interval order at every node.
bool pointwise_leq(const GridIntervalFunction& f, const GridIntervalFunction& g);

/// u = v on the intersection of both masks. `tolerance` relaxes equality of
/// finite endpoints; infinite endpoints must match exactly.
bool nd_equivalent(const GridIntervalFunction& u, const GridIntervalFunction& v, double tolerance = 0.0);
/// u <= v on the intersection of both masks.
bool nd_leq(const GridIntervalFunction& u, const GridIntervalFunction& v);

/// Same values, mask replaced by its conjunction with `mask`.
GridIntervalFunction restrict_to_mask(const GridIntervalFunction& f, const Mask& mask);

/// Codimension-one face of a partition box: the hyperplane x[axis] = coordinate
/// clipped to [lower, upper] on the remaining axes.
struct SkeletonFace {
  std::size_t axis = 0;
  double coordinate = 0.0;
  Point lower;
  Point upper;

  bool contains(const Point& x, double tolerance) const;
  friend bool operator==(const SkeletonFace&, const SkeletonFace&) = default;
};

/// Finite union of faces; closed, nowhere dense and of measure zero.
class SkeletonSet {
public:
  SkeletonSet() = default;
  explicit SkeletonSet(std::vector<SkeletonFace> faces) : faces_(std::move(faces)) {}

  const std::vector<SkeletonFace>& faces() const noexcept { return faces_; }
  std::size_t size() const noexcept { return faces_.size(); }
  bool contains(const Point& x, double tolerance) const;
  /// Mask that excludes the grid nodes lying on the skeleton.
  Mask node_mask(const GridDomain& domain, double tolerance) const;

private:
  std::vector<SkeletonFace> faces_;
};

}  // namespace ordcomp
