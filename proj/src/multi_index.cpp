#include "ordcomp/multi_index.hpp"

#include <algorithm>
#include <functional>

#include "ordcomp/error.hpp"

namespace ordcomp {

unsigned total_degree(const MultiIndex& p) { return p[0] + p[1] + p[2]; }

std::string to_string(const MultiIndex& p, std::size_t dims) {
  std::string s = "(";
  for (std::size_t a = 0; a < dims; ++a) s += (a ? "," : "") + std::to_string(p[a]);
  return s + ")";
}

MultiIndexSet::MultiIndexSet(std::size_t dims, std::size_t order) : dims_(dims), order_(order) {
  if (dims == 0 || dims > 3) throw InvalidInput("jet dimension must be between 1 and 3");
  if (order > 8) throw InvalidInput("derivative order above 8 is not supported");
  for (unsigned degree = 0; degree <= order; ++degree) {
    MultiIndex p{};
    // Lex-descending enumeration of compositions of `degree` into `dims` parts.
    std::function<void(std::size_t, unsigned)> fill = [&](std::size_t axis, unsigned left) {
      if (axis + 1 == dims_) {
        p[axis] = left;
        indices_.push_back(p);
        return;
      }
      for (unsigned k = left + 1; k-- > 0;) {
        p[axis] = k;
        fill(axis + 1, left - k);
      }
    };
    fill(0, degree);
  }
}

std::optional<std::size_t> MultiIndexSet::index_of(const MultiIndex& p) const {
  auto it = std::find(indices_.begin(), indices_.end(), p);
  if (it == indices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - indices_.begin());
}

std::size_t MultiIndexSet::pure_index(std::size_t axis, std::size_t degree) const {
  MultiIndex p{};
  p[axis] = static_cast<unsigned>(degree);
  auto i = index_of(p);
  if (!i) throw InvalidInput("pure derivative outside the index set");
  return *i;
}

}  // namespace ordcomp
