#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ordcomp {

/// Exponent vector p of a partial derivative D^p; unused trailing axes stay 0.
using MultiIndex = std::array<unsigned, 3>;

unsigned total_degree(const MultiIndex& p);
std::string to_string(const MultiIndex& p, std::size_t dims);

/**
 * All multi-indices p in N^n with |p| <= m, in graded-lex order: by total
 * degree, then lexicographically descending, so index 0 is the function value
 * and index 1 is the first-axis derivative.
 */
class MultiIndexSet {
public:
  MultiIndexSet() = default;
  MultiIndexSet(std::size_t dims, std::size_t order);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  std::optional<std::size_t> index_of(const MultiIndex& p) const;
  /// Index of the pure derivative of the given degree along `axis`.
  std::size_t pure_index(std::size_t axis, std::size_t degree) const;

  friend bool operator==(const MultiIndexSet& a, const MultiIndexSet& b) {
    return a.dims_ == b.dims_ && a.order_ == b.order_;
  }

private:
  std::size_t dims_ = 0;
  std::size_t order_ = 0;
  std::vector<MultiIndex> indices_;
};

/// Jet (xi_p) of values and partial derivatives, one entry per multi-index.
using Jet = std::vector<double>;

}  // namespace ordcomp
