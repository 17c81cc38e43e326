#include "ordcomp/baire.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "ordcomp/error.hpp"

namespace ordcomp {

std::vector<std::size_t> dense_ball(const GridDomain& domain, const Mask& D, std::size_t node) {
  if (D[node]) return {node};
  std::size_t max_radius = 0;
  for (auto r : domain.resolution()) max_radius = std::max(max_radius, r);
  std::vector<std::size_t> hits;
  for (std::size_t radius = 1; radius <= max_radius; ++radius) {
    domain.for_each_in_ball(node, radius, [&](std::size_t y) {
      if (D[y]) hits.push_back(y);
    });
    if (!hits.empty()) return hits;
  }
  throw NotDense("no ball around node " + std::to_string(node) + " meets the dense set");
}

std::vector<std::size_t> minimal_neighborhood(const GridDomain& domain, const Mask& D, std::size_t node) {
  auto ball = dense_ball(domain, D, node);
  if (!D[node]) ball.push_back(node);
  return ball;
}

namespace {

template <class Reduce>
GridIntervalFunction reduce_over_balls(const GridIntervalFunction& f, const Mask& D, Reduce reduce) {
  const auto& domain = f.domain();
  require_dense(domain, D, "Baire operator dense set");
  std::vector<ExtInterval> out;
  out.reserve(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out.push_back(reduce(dense_ball(domain, D, x)));
  return GridIntervalFunction(domain, std::move(out), D);
}

ExtReal ball_inf(const GridIntervalFunction& f, const std::vector<std::size_t>& ball) {
  ExtReal m = ExtReal::pos_inf();
  for (auto y : ball) m = std::min(m, f[y].lo());
  return m;
}

ExtReal ball_sup(const GridIntervalFunction& f, const std::vector<std::size_t>& ball) {
  ExtReal m = ExtReal::neg_inf();
  for (auto y : ball) m = std::max(m, f[y].hi());
  return m;
}

ExtReal endpoint(const GridIntervalFunction& f, Endpoint which, std::size_t node) {
  return which == Endpoint::lower ? f[node].lo() : f[node].hi();
}

}  // namespace

GridIntervalFunction baire_lower(const GridIntervalFunction& f, const Mask& D) {
  return reduce_over_balls(f, D, [&](const auto& ball) { return ExtInterval::point(ball_inf(f, ball)); });
}

GridIntervalFunction baire_upper(const GridIntervalFunction& f, const Mask& D) {
  return reduce_over_balls(f, D, [&](const auto& ball) { return ExtInterval::point(ball_sup(f, ball)); });
}

GridIntervalFunction graph_completion(const GridIntervalFunction& f, const Mask& D) {
  return reduce_over_balls(f, D, [&](const auto& ball) { return ExtInterval(ball_inf(f, ball), ball_sup(f, ball)); });
}

BaireResult baire(const GridIntervalFunction& f, const Mask& D) {
  return {baire_lower(f, D), baire_upper(f, D), graph_completion(f, D)};
}

bool is_h_continuous(const GridIntervalFunction& f) {
  const Mask D = f.degenerate_mask();
  if (!is_dense(f.domain(), D)) return false;
  return same_values(graph_completion(f.lower_selection(), D), f) &&
         same_values(graph_completion(f.upper_selection(), D), f);
}

bool is_nearly_finite(const GridIntervalFunction& f) {
  const auto& domain = f.domain();
  const Mask D = f.degenerate_mask();
  if (!is_dense(domain, D)) return false;
  Mask interior(f.size(), false);
  for (std::size_t x = 0; x < f.size(); ++x) {
    const auto nbhd = minimal_neighborhood(domain, D, x);
    interior[x] = std::all_of(nbhd.begin(), nbhd.end(), [&](std::size_t y) { return f[y].finite(); });
  }
  return is_dense(domain, interior);
}

bool endpoint_continuous_at(const GridIntervalFunction& f, Endpoint which, const Mask& D, std::size_t node) {
  const ExtReal v = endpoint(f, which, node);
  for (auto y : minimal_neighborhood(f.domain(), D, node))
    if (endpoint(f, which, y) != v) return false;
  return true;
}

bool lower_semicontinuous_at(const GridIntervalFunction& f, const Mask& D, std::size_t node) {
  for (auto y : minimal_neighborhood(f.domain(), D, node))
    if (f[y].lo() < f[node].lo()) return false;
  return true;
}

bool upper_semicontinuous_at(const GridIntervalFunction& f, const Mask& D, std::size_t node) {
  for (auto y : minimal_neighborhood(f.domain(), D, node))
    if (f[y].hi() > f[node].hi()) return false;
  return true;
}

Mask discrete_closure(const GridDomain& domain, const Mask& D, const Mask& set) {
  Mask out(domain.node_count(), false);
  for (std::size_t x = 0; x < domain.node_count(); ++x) {
    const auto nbhd = minimal_neighborhood(domain, D, x);
    out[x] = std::any_of(nbhd.begin(), nbhd.end(), [&](std::size_t y) { return set[y]; });
  }
  return out;
}

bool is_discretely_closed(const GridDomain& domain, const Mask& D, const Mask& set) {
  return discrete_closure(domain, D, set) == set;
}

DiscontinuityReport discontinuity_report(const GridIntervalFunction& f, std::span<const double> eps_list) {
  const auto& domain = f.domain();
  DiscontinuityReport report;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (width(f[x]) > ExtReal(0.0)) report.gamma_nodes.push_back(x);

  Mask D = f.degenerate_mask();
  const bool topology_ok = is_dense(domain, D);
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw InvalidInput("discontinuity levels must be positive");
    DiscontinuityLevel level;
    level.eps = eps;
    level.max_width = ExtReal(0.0);
    Mask in_level(f.size(), false);
    for (auto x : report.gamma_nodes) {
      const ExtReal w = width(f[x]);
      if (w >= ExtReal(eps)) {
        level.nodes.push_back(x);
        in_level[x] = true;
        level.max_width = std::max(level.max_width, w);
      }
    }
    Mask outside(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) outside[x] = !in_level[x];
    level.nowhere_dense = is_dense(domain, outside);
    level.closed = topology_ok && is_discretely_closed(domain, D, in_level);
    report.levels.push_back(std::move(level));
  }
  return report;
}

std::string format_report(const DiscontinuityReport& report) {
  std::ostringstream out;
  out << "gamma_nodes " << report.gamma_nodes.size() << '\n';
  for (const auto& level : report.levels) {
    char eps[32];
    std::snprintf(eps, sizeof eps, "%.17g", level.eps);
    out << "eps " << eps << " nodes " << level.nodes.size() << " nowhere_dense "
        << (level.nowhere_dense ? "yes" : "no") << " closed " << (level.closed ? "yes" : "no") << " max_width "
        << to_string(level.max_width) << '\n';
  }
  return out.str();
}

GridIntervalFunction assimilate_f0(const GridIntervalFunction& u) {
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (!u.masked(x)) continue;
    if (!u[x].degenerate() || !u[x].finite())
      throw InvalidInput("assimilation needs finite point values on the dense set (node " + std::to_string(x) + ")");
  }
  return graph_completion(u, u.mask());
}

bool dense_determination_check(const GridIntervalFunction& f, const GridIntervalFunction& g, const Mask& D) {
  if (!(f.domain() == g.domain())) throw DomainMismatch("grid functions live on different grids");
  require_dense(f.domain(), D, "determining set");
  for (std::size_t x = 0; x < f.size(); ++x)
    if (D[x] && f[x] != g[x]) return true;

  const auto fc = graph_completion(f, D);
  const auto gc = graph_completion(g, D);
  if (!same_values(fc, gc)) return false;
  const bool determined = same_values(fc, f) && same_values(gc, g);
  return !determined || same_values(f, g);
}

namespace {

template <class Combine>
GridIntervalFunction h_combine(std::span<const GridIntervalFunction> family, Combine combine) {
  if (family.empty()) throw InvalidInput("empty family");
  const auto& domain = family.front().domain();
  Mask D = family.front().degenerate_mask();
  std::vector<ExtInterval> values = family.front().values();
  for (const auto& g : family.subspan(1)) {
    if (!(g.domain() == domain)) throw DomainMismatch("family members live on different grids");
    D = mask_and(D, g.degenerate_mask());
    for (std::size_t x = 0; x < values.size(); ++x) values[x] = combine(values[x], g[x]);
  }
  require_dense(domain, D, "common determining set");
  return graph_completion(GridIntervalFunction(domain, std::move(values), D), D);
}

}  // namespace

GridIntervalFunction h_supremum(std::span<const GridIntervalFunction> family) {
  return h_combine(family, [](const ExtInterval& a, const ExtInterval& b) { return interval_join(a, b); });
}

GridIntervalFunction h_infimum(std::span<const GridIntervalFunction> family) {
  return h_combine(family, [](const ExtInterval& a, const ExtInterval& b) { return interval_meet(a, b); });
}

}  // namespace ordcomp
