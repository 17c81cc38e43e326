#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ordcomp {

/// Subset of a poset's elements, one bit per element index.
using ElementSet = std::uint64_t;
inline constexpr std::size_t kMaxPosetSize = 64;

inline constexpr ElementSet singleton(std::size_t i) { return ElementSet{1} << i; }
inline constexpr bool has(ElementSet s, std::size_t i) { return (s >> i) & 1u; }
ElementSet all_elements(std::size_t n);
std::size_t cardinality(ElementSet s);

/// Finite partially ordered set with an explicit order relation.
class FinitePoset {
public:
  FinitePoset() = default;
  /// `leq[i][j]` is i <= j. Throws InvalidInput unless reflexive, antisymmetric and transitive.
  FinitePoset(std::vector<std::string> labels, const std::vector<std::vector<bool>>& leq);

  /// Reflexive-transitive closure of the given strict relations (lower, upper).
  static FinitePoset from_relations(std::vector<std::string> labels,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& less);
  static FinitePoset chain(std::size_t n);
  static FinitePoset antichain(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  bool leq(std::size_t i, std::size_t j) const { return has(up_[i], j); }

  ElementSet down_set(std::size_t i) const { return down_[i]; }
  ElementSet up_set(std::size_t i) const { return up_[i]; }
  ElementSet upper_bounds(ElementSet s) const;
  ElementSet lower_bounds(ElementSet s) const;
  /// MacNeille closure L(U(s)).
  ElementSet closure(ElementSet s) const { return lower_bounds(upper_bounds(s)); }

  /// Least upper bound of `s` inside the poset, if it exists.
  std::optional<std::size_t> supremum(ElementSet s) const;
  std::optional<std::size_t> infimum(ElementSet s) const;

  /// Pairs (i, j) with j covering i.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

private:
  std::vector<std::string> labels_;
  std::vector<ElementSet> up_;    // up_[i] = { j : i <= j }
  std::vector<ElementSet> down_;  // down_[i] = { j : j <= i }
};

/// Dedekind cut: upper = U(lower) and lower = L(upper).
struct Cut {
  ElementSet lower = 0;
  ElementSet upper = 0;
  friend bool operator==(const Cut&, const Cut&) = default;
};

/// Cut of `poset` generated by `s`: (L(U(s)), U(s)).
Cut cut_of(const FinitePoset& poset, ElementSet s);
bool is_cut(const FinitePoset& poset, const Cut& c);

/// The Dedekind-MacNeille completion of a finite poset, ordered by inclusion of lower sets.
class CutLattice {
public:
  const FinitePoset& base() const noexcept { return base_; }
  const std::vector<Cut>& cuts() const noexcept { return cuts_; }
  std::size_t size() const noexcept { return cuts_.size(); }
  const Cut& operator[](std::size_t i) const { return cuts_[i]; }

  bool leq(std::size_t a, std::size_t b) const { return (cuts_[a].lower & ~cuts_[b].lower) == 0; }
  /// Principal cut <x] of a base element.
  std::size_t embed(std::size_t element) const { return embed_[element]; }
  /// Cut not of the form <x]; the least and greatest cuts are usually adjoined.
  bool is_adjoined(std::size_t cut) const { return adjoined_[cut]; }
  std::optional<std::size_t> find(ElementSet lower) const;

  std::size_t bottom() const { return 0; }
  std::size_t top() const { return cuts_.size() - 1; }
  std::size_t meet(std::size_t a, std::size_t b) const;
  std::size_t join(std::size_t a, std::size_t b) const;
  /// Join / meet of an arbitrary family; the empty join is bottom, the empty meet is top.
  std::size_t join_all(std::span<const std::size_t> family) const;
  std::size_t meet_all(std::span<const std::size_t> family) const;

  /// The lattice as a poset, one element per cut, labelled by its lower set.
  FinitePoset as_poset() const;

private:
  friend CutLattice macneille_complete(const FinitePoset& poset, std::size_t max_cuts);

  FinitePoset base_;
  std::vector<Cut> cuts_;
  std::vector<std::size_t> embed_;
  std::vector<bool> adjoined_;
  std::unordered_map<ElementSet, std::size_t> index_;
};

/// Cuts are enumerated as the intersection closure of the principal down-sets.
/// Throws InvalidInput when the completion exceeds `max_cuts`.
CutLattice macneille_complete(const FinitePoset& poset, std::size_t max_cuts = std::size_t{1} << 16);

/// Every existing supremum and infimum of a subset of P is carried by the
/// embedding to the supremum / infimum in the lattice. Exhaustive; |P| <= 10.
bool preserves_bounds_check(const FinitePoset& poset, const CutLattice& lattice);

/// Every subset of the poset has a supremum and an infimum.
bool is_complete_lattice(const FinitePoset& poset);

/// Equation T(A) = F for a map from a bare set X into a poset Y.
struct AbstractEquation {
  std::vector<std::string> x_labels;
  FinitePoset y;
  std::vector<std::size_t> map;  // map[x] = index in y

  void validate() const;
};

/// X modulo equal images, ordered by comparing images in Y.
struct PullbackQuotient {
  FinitePoset poset;
  std::vector<std::size_t> class_of;  // x -> class
  std::vector<std::size_t> image;     // class -> element of Y
};

PullbackQuotient pullback_order(const AbstractEquation& eq);

/// Extension of the quotient map to cuts: closure in Y of the direct image.
Cut extend_to_cuts(const PullbackQuotient& quotient, const FinitePoset& y, ElementSet quotient_lower);

struct SolvabilityResult {
  bool solvable = false;
  Cut sup_side;  // sup of extended images below F
  Cut inf_side;  // inf of extended images above F
  std::optional<Cut> witness;  // cut of the quotient's completion mapped onto F
  PullbackQuotient quotient;
  CutLattice completion;  // completion of the quotient
};

/// Decides solvability of the extended equation by comparing the two sides of
/// the sup = inf criterion; when solvable the witness is built from the sup side.
SolvabilityResult solvability_criterion(const AbstractEquation& eq, const Cut& target);

/// Poset text: one element per line, "label: cover1 cover2 ..." where the
/// listed elements cover `label`. Blank lines and '#' comments are ignored.
FinitePoset parse_poset(std::istream& in);
/// Hasse diagram of the lattice as a dot digraph, one edge per cover.
void write_lattice_dot(std::ostream& out, const CutLattice& lattice);
std::string describe_set(const FinitePoset& poset, ElementSet s);

}  // namespace ordcomp
