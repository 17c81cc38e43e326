#include "ordcomp/macneille.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "ordcomp/error.hpp"

namespace ordcomp {

ElementSet all_elements(std::size_t n) { return n >= 64 ? ~ElementSet{0} : (ElementSet{1} << n) - 1; }

std::size_t cardinality(ElementSet s) { return static_cast<std::size_t>(std::popcount(s)); }

FinitePoset::FinitePoset(std::vector<std::string> labels, const std::vector<std::vector<bool>>& leq)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n > kMaxPosetSize) throw InvalidInput("posets are limited to 64 elements");
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != n)
    throw InvalidInput("poset labels must be distinct");
  if (leq.size() != n) throw InvalidInput("order relation must be n x n");
  for (const auto& row : leq)
    if (row.size() != n) throw InvalidInput("order relation must be n x n");
  up_.assign(n, 0);
  down_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq[i][i]) throw InvalidInput("order relation is not reflexive at '" + labels_[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      if (i != j && leq[j][i])
        throw InvalidInput("order relation is not antisymmetric: '" + labels_[i] + "' and '" + labels_[j] + "'");
      up_[i] |= singleton(j);
      down_[j] |= singleton(i);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i][j] && (up_[j] & ~up_[i]) != 0)
        throw InvalidInput("order relation is not transitive through '" + labels_[j] + "'");
}

FinitePoset FinitePoset::from_relations(std::vector<std::string> labels,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  const std::size_t n = labels.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, b] : less) {
    if (a >= n || b >= n) throw InvalidInput("relation refers to an unknown element");
    leq[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = true;
  return FinitePoset(std::move(labels), leq);
}

FinitePoset FinitePoset::chain(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> less;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i > 0) less.emplace_back(i - 1, i);
  }
  return from_relations(std::move(labels), less);
}

FinitePoset FinitePoset::antichain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return from_relations(std::move(labels), {});
}

std::optional<std::size_t> FinitePoset::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

ElementSet FinitePoset::upper_bounds(ElementSet s) const {
  ElementSet out = all_elements(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (has(s, i)) out &= up_[i];
  return out;
}

ElementSet FinitePoset::lower_bounds(ElementSet s) const {
  ElementSet out = all_elements(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (has(s, i)) out &= down_[i];
  return out;
}

std::optional<std::size_t> FinitePoset::supremum(ElementSet s) const {
  const ElementSet ub = upper_bounds(s);
  for (std::size_t i = 0; i < size(); ++i)
    if (has(ub, i) && (ub & ~up_[i]) == 0) return i;
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::infimum(ElementSet s) const {
  const ElementSet lb = lower_bounds(s);
  for (std::size_t i = 0; i < size(); ++i)
    if (has(lb, i) && (lb & ~down_[i]) == 0) return i;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      if (i == j || !leq(i, j)) continue;
      // strictly between i and j
      const ElementSet between = (up_[i] & down_[j]) & ~singleton(i) & ~singleton(j);
      if (between == 0) out.emplace_back(i, j);
    }
  return out;
}

Cut cut_of(const FinitePoset& poset, ElementSet s) {
  const ElementSet upper = poset.upper_bounds(s);
  return Cut{poset.lower_bounds(upper), upper};
}

bool is_cut(const FinitePoset& poset, const Cut& c) {
  return poset.upper_bounds(c.lower) == c.upper && poset.lower_bounds(c.upper) == c.lower;
}

std::optional<std::size_t> CutLattice::find(ElementSet lower) const {
  auto it = index_.find(lower);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CutLattice::meet(std::size_t a, std::size_t b) const {
  // Intersections of cut lower sets are cut lower sets.
  return index_.at(cuts_[a].lower & cuts_[b].lower);
}

std::size_t CutLattice::join(std::size_t a, std::size_t b) const {
  return index_.at(base_.closure(cuts_[a].lower | cuts_[b].lower));
}

std::size_t CutLattice::join_all(std::span<const std::size_t> family) const {
  ElementSet u = 0;
  for (auto c : family) u |= cuts_[c].lower;
  return index_.at(base_.closure(u));
}

std::size_t CutLattice::meet_all(std::span<const std::size_t> family) const {
  ElementSet l = all_elements(base_.size());
  for (auto c : family) l &= cuts_[c].lower;
  return index_.at(l);
}

FinitePoset CutLattice::as_poset() const {
  if (size() > kMaxPosetSize) throw InvalidInput("cut lattice too large to re-complete");
  std::vector<std::string> labels;
  labels.reserve(size());
  for (const auto& c : cuts_) labels.push_back(describe_set(base_, c.lower));
  std::vector<std::vector<bool>> rel(size(), std::vector<bool>(size()));
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) rel[a][b] = leq(a, b);
  return FinitePoset(std::move(labels), rel);
}

CutLattice macneille_complete(const FinitePoset& poset, std::size_t max_cuts) {
  const std::size_t n = poset.size();
  // Cut lower sets are exactly the lower-bound sets L(B) = intersection of the
  // principal down-sets of B, with L(empty) = P.
  std::set<ElementSet> family{all_elements(n)};
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<ElementSet> fresh;
    for (ElementSet a : family) fresh.push_back(a & poset.down_set(b));
    family.insert(fresh.begin(), fresh.end());
    if (family.size() > max_cuts)
      throw InvalidInput("completion exceeds " + std::to_string(max_cuts) + " cuts");
  }

  std::vector<ElementSet> lowers(family.begin(), family.end());
  std::stable_sort(lowers.begin(), lowers.end(), [](ElementSet a, ElementSet b) {
    const auto ca = cardinality(a), cb = cardinality(b);
    return ca != cb ? ca < cb : a < b;
  });

  CutLattice lattice;
  lattice.base_ = poset;
  for (ElementSet lower : lowers) {
    lattice.index_.emplace(lower, lattice.cuts_.size());
    lattice.cuts_.push_back(Cut{lower, poset.upper_bounds(lower)});
  }
  lattice.adjoined_.assign(lattice.cuts_.size(), true);
  lattice.embed_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto c = lattice.index_.at(poset.down_set(x));
    lattice.embed_[x] = c;
    lattice.adjoined_[c] = false;
  }
  return lattice;
}

bool preserves_bounds_check(const FinitePoset& poset, const CutLattice& lattice) {
  if (poset.size() > 10) throw InvalidInput("bound preservation is checked exhaustively only for |P| <= 10");
  const FinitePoset lp = lattice.as_poset();
  const ElementSet subsets = ElementSet{1} << poset.size();
  for (ElementSet s = 0; s < subsets; ++s) {
    ElementSet image = 0;
    for (std::size_t x = 0; x < poset.size(); ++x)
      if (has(s, x)) image |= singleton(lattice.embed(x));
    if (auto sup = poset.supremum(s)) {
      const auto lsup = lp.supremum(image);
      if (!lsup || *lsup != lattice.embed(*sup)) return false;
    }
    if (auto inf = poset.infimum(s)) {
      const auto linf = lp.infimum(image);
      if (!linf || *linf != lattice.embed(*inf)) return false;
    }
  }
  return true;
}

bool is_complete_lattice(const FinitePoset& poset) {
  const std::size_t n = poset.size();
  if (n == 0) return false;  // the empty family has no supremum
  if (n <= 10) {
    for (ElementSet s = 0; s < (ElementSet{1} << n); ++s)
      if (!poset.supremum(s) || !poset.infimum(s)) return false;
    return true;
  }
  // Finite case: extremes plus binary bounds suffice.
  if (!poset.supremum(0) || !poset.infimum(0)) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const ElementSet pair = singleton(a) | singleton(b);
      if (!poset.supremum(pair) || !poset.infimum(pair)) return false;
    }
  return true;
}

void AbstractEquation::validate() const {
  if (map.size() != x_labels.size()) throw InvalidInput("map must assign an image to every element of X");
  for (auto y_index : map)
    if (y_index >= y.size()) throw InvalidInput("map image outside Y");
}

PullbackQuotient pullback_order(const AbstractEquation& eq) {
  eq.validate();
  PullbackQuotient q;
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> members;
  q.class_of.resize(eq.map.size());
  for (std::size_t x = 0; x < eq.map.size(); ++x) {
    auto it = std::find(q.image.begin(), q.image.end(), eq.map[x]);
    if (it == q.image.end()) {
      q.class_of[x] = q.image.size();
      q.image.push_back(eq.map[x]);
      members.emplace_back();
    } else {
      q.class_of[x] = static_cast<std::size_t>(it - q.image.begin());
    }
    members[q.class_of[x]].push_back(eq.x_labels[x]);
  }
  const std::size_t k = q.image.size();
  for (const auto& m : members) {
    std::string label = "{";
    for (std::size_t i = 0; i < m.size(); ++i) label += (i ? "," : "") + m[i];
    labels.push_back(label + "}");
  }
  std::vector<std::vector<bool>> rel(k, std::vector<bool>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) rel[a][b] = eq.y.leq(q.image[a], q.image[b]);
  q.poset = FinitePoset(std::move(labels), rel);
  return q;
}

Cut extend_to_cuts(const PullbackQuotient& quotient, const FinitePoset& y, ElementSet quotient_lower) {
  ElementSet image = 0;
  for (std::size_t c = 0; c < quotient.image.size(); ++c)
    if (has(quotient_lower, c)) image |= singleton(quotient.image[c]);
  return cut_of(y, image);
}

SolvabilityResult solvability_criterion(const AbstractEquation& eq, const Cut& target) {
  if (!is_cut(eq.y, target)) throw InvalidInput("target is not a cut of Y");
  SolvabilityResult result;
  result.quotient = pullback_order(eq);
  result.completion = macneille_complete(result.quotient.poset);

  const auto& y = eq.y;
  ElementSet below_union = 0;       // union of extended images contained in F
  ElementSet below_sources = 0;     // union of their quotient cuts
  ElementSet above_meet = all_elements(y.size());
  for (const auto& u : result.completion.cuts()) {
    const Cut image = extend_to_cuts(result.quotient, y, u.lower);
    if ((image.lower & ~target.lower) == 0) {
      below_union |= image.lower;
      below_sources |= u.lower;
    }
    if ((target.lower & ~image.lower) == 0) above_meet &= image.lower;
  }
  result.sup_side = cut_of(y, below_union);
  result.inf_side = Cut{above_meet, y.upper_bounds(above_meet)};
  result.solvable = result.sup_side == result.inf_side;
  if (result.solvable) {
    const ElementSet witness = result.quotient.poset.closure(below_sources);
    const Cut a{witness, result.quotient.poset.upper_bounds(witness)};
    if (!(extend_to_cuts(result.quotient, y, a.lower) == target))
      throw Error("internal: criterion witness does not solve the equation");
    result.witness = a;
  }
  return result;
}

FinitePoset parse_poset(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> raw;  // (lower, cover)
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  std::string line;
  std::size_t line_no = 0;
  auto intern = [&](const std::string& label) {
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    std::istringstream head(line.substr(0, colon));
    std::string label, extra;
    if (!(head >> label)) throw ParseError("missing element label", line_no, 1);
    if (head >> extra)
      throw ParseError("expected 'label: covers...', found '" + extra + "'", line_no,
                       line.find(extra, line.find(label) + label.size()) + 1);
    intern(label);
    if (colon == std::string::npos) continue;
    std::istringstream rest(line.substr(colon + 1));
    std::string cover;
    while (rest >> cover) {
      raw.emplace_back(label, cover);
      positions.emplace_back(line_no, colon + 2 + line.substr(colon + 1).find(cover));
    }
  }
  for (const auto& [lo, hi] : raw) intern(hi);
  std::vector<std::pair<std::size_t, std::size_t>> less;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    const auto a = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), raw[r].first) - labels.begin());
    const auto b = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), raw[r].second) - labels.begin());
    if (a == b) throw ParseError("element cannot cover itself", positions[r].first, positions[r].second);
    less.emplace_back(a, b);
  }
  try {
    return FinitePoset::from_relations(std::move(labels), less);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

std::string describe_set(const FinitePoset& poset, ElementSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (!has(s, i)) continue;
    out += (first ? "" : ",") + poset.labels()[i];
    first = false;
  }
  return out + "}";
}

void write_lattice_dot(std::ostream& out, const CutLattice& lattice) {
  out << "digraph cuts {\n";
  for (std::size_t c = 0; c < lattice.size(); ++c) {
    out << "  c" << c << " [label=\"" << describe_set(lattice.base(), lattice[c].lower) << "\"";
    if (lattice.is_adjoined(c)) out << ", style=dashed";
    out << "];\n";
  }
  for (std::size_t a = 0; a < lattice.size(); ++a)
    for (std::size_t b = 0; b < lattice.size(); ++b) {
      if (a == b || !lattice.leq(a, b)) continue;
      bool cover = true;
      for (std::size_t m = 0; m < lattice.size() && cover; ++m)
        if (m != a && m != b && lattice.leq(a, m) && lattice.leq(m, b)) cover = false;
      if (cover) out << "  c" << a << " -> c" << b << ";\n";
    }
  out << "}\n";
}

}  // namespace ordcomp
