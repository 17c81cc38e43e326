#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. Each one follows the textbook definition directly and
// reuses none of the library's search or enumeration code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "ordcomp/baire.hpp"
#include "ordcomp/macneille.hpp"

namespace oracle {

using namespace ordcomp;

inline std::size_t chebyshev(const GridDomain& g, std::size_t a, std::size_t b) {
  const auto ia = g.unflatten(a), ib = g.unflatten(b);
  std::size_t d = 0;
  for (std::size_t k = 0; k < g.dims(); ++k) d = std::max(d, ia[k] > ib[k] ? ia[k] - ib[k] : ib[k] - ia[k]);
  return d;
}

/// Sup over radii r of inf over B(x, r) ∩ D of the lower endpoint (and the
/// mirror for the upper one), every radius evaluated; an empty ball gives
/// +inf (resp. -inf), so it never wins the outer sup (inf).
inline std::vector<ExtInterval> sup_inf_completion(const GridIntervalFunction& f, const Mask& D) {
  const GridDomain& g = f.domain();
  std::size_t rmax = 0;
  for (auto r : g.resolution()) rmax = std::max(rmax, r);
  std::vector<ExtInterval> out;
  for (std::size_t x = 0; x < f.size(); ++x) {
    ExtReal lower = ExtReal::neg_inf(), upper = ExtReal::pos_inf();
    for (std::size_t r = 0; r <= rmax; ++r) {
      ExtReal inf = ExtReal::pos_inf(), sup = ExtReal::neg_inf();
      for (std::size_t y = 0; y < f.size(); ++y) {
        if (!D[y] || chebyshev(g, x, y) > r) continue;
        inf = std::min(inf, f[y].lo());
        sup = std::max(sup, f[y].hi());
      }
      if (inf > sup) continue;  // ball misses D
      lower = std::max(lower, inf);
      upper = std::min(upper, sup);
    }
    out.emplace_back(lower, upper);
  }
  return out;
}

inline bool leq_brute(const FinitePoset& p, std::size_t a, std::size_t b) { return p.leq(a, b); }

/// L(U(S)) by scanning all pairs.
inline ElementSet closure_brute(const FinitePoset& p, ElementSet s) {
  ElementSet up = 0;
  for (std::size_t u = 0; u < p.size(); ++u) {
    bool ok = true;
    for (std::size_t a = 0; a < p.size(); ++a)
      if (has(s, a) && !p.leq(a, u)) ok = false;
    if (ok) up |= singleton(u);
  }
  ElementSet low = 0;
  for (std::size_t l = 0; l < p.size(); ++l) {
    bool ok = true;
    for (std::size_t u = 0; u < p.size(); ++u)
      if (has(up, u) && !p.leq(l, u)) ok = false;
    if (ok) low |= singleton(l);
  }
  return low;
}

/// Lower sets of all cuts, from the closures of all 2^n subsets.
inline std::set<ElementSet> all_cut_lowers(const FinitePoset& p) {
  std::set<ElementSet> out;
  for (ElementSet s = 0; s < (ElementSet{1} << p.size()); ++s) out.insert(closure_brute(p, s));
  return out;
}

/// Searches every cut A of the image order on X for closure_Y(image(A)) = target.
inline bool solvable_brute(const AbstractEquation& eq, ElementSet target_lower) {
  std::vector<std::size_t> images;
  for (auto y : eq.map)
    if (std::find(images.begin(), images.end(), y) == images.end()) images.push_back(y);
  const std::size_t k = images.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
    // cut of the quotient generated by s, via the order of the images in Y
    std::uint64_t up = 0, low = 0;
    for (std::size_t u = 0; u < k; ++u) {
      bool ok = true;
      for (std::size_t a = 0; a < k; ++a)
        if (((s >> a) & 1u) && !eq.y.leq(images[a], images[u])) ok = false;
      if (ok) up |= std::uint64_t{1} << u;
    }
    for (std::size_t l = 0; l < k; ++l) {
      bool ok = true;
      for (std::size_t u = 0; u < k; ++u)
        if (((up >> u) & 1u) && !eq.y.leq(images[l], images[u])) ok = false;
      if (ok) low |= std::uint64_t{1} << l;
    }
    ElementSet img = 0;
    for (std::size_t c = 0; c < k; ++c)
      if ((low >> c) & 1u) img |= singleton(images[c]);
    if (closure_brute(eq.y, img) == target_lower) return true;
  }
  return false;
}

inline std::vector<std::string> labels(std::size_t n, const char* prefix = "e") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Poset from the strict relations i < j selected by `bits` (pairs i < j in
/// lexicographic order), relabelled by `perm`. Every finite poset arises so,
/// since each has a linear extension.
inline FinitePoset poset_from_bits(std::size_t n, std::uint64_t bits, const std::vector<std::size_t>& perm) {
  std::vector<std::pair<std::size_t, std::size_t>> less;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++bit)
      if ((bits >> bit) & 1u) less.emplace_back(perm[i], perm[j]);
  return FinitePoset::from_relations(labels(n), less);
}

inline FinitePoset random_poset(std::mt19937_64& rng, std::size_t n) {
  const std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
  std::uniform_real_distribution<double> density(0.0, 1.0);
  const double p = density(rng);
  std::uint64_t bits = 0;
  for (std::size_t b = 0; b < pairs; ++b)
    if (density(rng) < p) bits |= std::uint64_t{1} << b;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return poset_from_bits(n, bits, perm);
}

/// Random mask excluding about `drop` of the nodes, then repaired so that no
/// grid cell is fully excluded.
inline Mask random_dense_mask(const GridDomain& g, std::mt19937_64& rng, double drop) {
  std::bernoulli_distribution excluded(drop);
  Mask m(g.node_count());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !excluded(rng);
  g.for_each_cell([&](const std::vector<std::size_t>& cell) {
    if (std::none_of(cell.begin(), cell.end(), [&](std::size_t y) { return m[y]; }))
      m[cell[std::uniform_int_distribution<std::size_t>(0, cell.size() - 1)(rng)]] = true;
  });
  return m;
}

/// Plain bisection on a sign change of g over [a, b].
inline double bisect(const std::function<double(double)>& g, double a, double b) {
  double ga = g(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double gm = g(m);
    if ((gm > 0) == (ga > 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// Grid for sin(1/x): spacing h = 1 / (pi/2 + 2 pi k), 1001 nodes on
/// (-501 h, 501 h), so the middle node is x = 0 and its neighbours sit at
/// sin(1/x) = 1 and -1. The middle node is excluded.
inline GridIntervalFunction sin_inverse_sample(int k = 10) {
  const double h = 1.0 / (M_PI / 2 + 2 * M_PI * k);
  const GridDomain g(Box({-501 * h}, {501 * h}), std::size_t{1001});
  Mask m(g.node_count(), true);
  m[500] = false;
  return GridIntervalFunction::sample(
      g, [](const Point& x) { return x[0] == 0.0 ? 0.0 : std::sin(1.0 / x[0]); }, m);
}

/// Heaviside H(x) = [x >= 0] on (-1, 1) with 1001 nodes; node 500 is x = 0
/// and is excluded from the mask.
inline GridIntervalFunction heaviside_sample(double value_at_jump = 1.0) {
  const GridDomain g(Box({-1.0}, {1.0}), std::size_t{1001});
  Mask m(g.node_count(), true);
  m[500] = false;
  std::vector<ExtInterval> v;
  for (std::size_t i = 0; i < g.node_count(); ++i)
    v.push_back(ExtInterval::point(i == 500 ? value_at_jump : (i > 500 ? 1.0 : 0.0)));
  return GridIntervalFunction(g, std::move(v), m);
}

}  // namespace oracle
