#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ordcomp/baire.hpp"
#include "ordcomp/error.hpp"

using namespace ordcomp;

namespace {

GridIntervalFunction random_point_function(const GridDomain& g, std::mt19937_64& rng, const Mask& mask) {
  std::uniform_int_distribution<int> v(-4, 4);
  std::vector<ExtInterval> values;
  for (std::size_t i = 0; i < g.node_count(); ++i) values.push_back(ExtInterval::point(v(rng)));
  return GridIntervalFunction(g, std::move(values), mask);
}

GridDomain random_domain(std::mt19937_64& rng) {
  const std::size_t dims = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  std::vector<std::size_t> res(dims);
  for (auto& r : res) r = std::uniform_int_distribution<std::size_t>(3, dims == 1 ? 30 : dims == 2 ? 9 : 5)(rng);
  return GridDomain(Box(Point(dims, 0.0), Point(dims, 1.0)), res);
}

}  // namespace

TEST_CASE("small completion matches hand-computed values") {
  const GridDomain g(Box({0.0}, {1.0}), std::size_t{7});
  const std::vector<double> v{3, 1, 4, 1, 5, 9, 2};
  std::vector<ExtInterval> values;
  for (double x : v) values.push_back(ExtInterval::point(x));
  const Mask D{true, false, true, true, false, true, true};
  const GridIntervalFunction f(g, values, D);
  const auto c = graph_completion(f, D);
  const std::vector<ExtInterval> expected{{3, 3}, {3, 4}, {4, 4}, {1, 1}, {1, 9}, {9, 9}, {2, 2}};
  CHECK(c.values() == expected);
  CHECK(c.mask() == D);
  CHECK(baire_lower(f, D)[4] == ExtInterval::point(1.0));
  CHECK(baire_upper(f, D)[4] == ExtInterval::point(9.0));
}

TEST_CASE("completion agrees with the sup-inf over every radius") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const GridDomain g = random_domain(rng);
    const Mask D = oracle::random_dense_mask(g, rng, 0.6);
    const auto f = random_point_function(g, rng, full_mask(g));
    const auto c = graph_completion(f, D);
    CHECK(c.values() == oracle::sup_inf_completion(f, D));
  }
}

TEST_CASE("Baire operators need a dense set") {
  const GridDomain g(Box({0.0}, {1.0}), std::size_t{4});
  const auto f = GridIntervalFunction::constant(g, ExtInterval::point(0.0));
  CHECK_THROWS_AS(graph_completion(f, Mask{true, false, false, true}), NotDense);
}

TEST_CASE("lower <= completion <= upper, idempotent, and identity on continuous samples") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const GridDomain g = random_domain(rng);
    const Mask D = oracle::random_dense_mask(g, rng, 0.5);
    const auto f = random_point_function(g, rng, full_mask(g));
    const BaireResult r = baire(f, D);
    for (std::size_t x = 0; x < f.size(); ++x) {
      CHECK(r.lower[x].lo() == r.completed[x].lo());
      CHECK(r.upper[x].hi() == r.completed[x].hi());
      // on the dense set the value is kept
      if (D[x]) CHECK(r.completed[x] == f[x]);
    }
    const auto twice = graph_completion(r.completed, D);
    CHECK(same_values(twice, r.completed));
    CHECK(is_h_continuous(r.completed));
  }
  const GridDomain g(Box({0.0, 0.0}, {1.0, 1.0}), std::size_t{20});
  const auto smooth = GridIntervalFunction::sample(g, [](const Point& x) { return std::sin(3 * x[0]) + x[1]; });
  CHECK(same_values(graph_completion(smooth, smooth.mask()), smooth));
  CHECK(is_h_continuous(smooth));
}

TEST_CASE("a spike off the dense set is replaced by its neighbours' range") {
  const GridDomain g(Box({0.0}, {1.0}), std::size_t{9});
  std::vector<ExtInterval> v(9, ExtInterval::point(0.0));
  v[4] = ExtInterval::point(10.0);
  Mask D = full_mask(g);
  CHECK(graph_completion(GridIntervalFunction(g, v), D)[4] == ExtInterval::point(10.0));
  D[4] = false;
  CHECK(graph_completion(GridIntervalFunction(g, v), D)[4] == ExtInterval::point(0.0));
}

TEST_CASE("Heaviside completion") {
  const auto h = oracle::heaviside_sample();
  const auto c = assimilate_f0(h);
  CHECK(c[500] == ExtInterval(0.0, 1.0));
  for (std::size_t i = 0; i < c.size(); ++i)
    if (i != 500) CHECK(c[i].degenerate());
  CHECK(is_h_continuous(c));
  CHECK(is_nearly_finite(c));
  CHECK_FALSE(is_h_continuous(h));  // the raw sample is not minimal at the jump
}

TEST_CASE("fat and non-minimal interval functions are not H-continuous") {
  const GridDomain g(Box({0.0}, {1.0}), std::size_t{11});
  CHECK_FALSE(is_h_continuous(GridIntervalFunction::constant(g, ExtInterval(0.0, 2.0))));
  auto h = assimilate_f0(oracle::heaviside_sample());
  std::vector<ExtInterval> v = h.values();
  v[500] = ExtInterval(-1.0, 1.0);  // wider than the completion
  CHECK_FALSE(is_h_continuous(GridIntervalFunction(h.domain(), v, h.mask())));
  v[500] = ExtInterval(0.0, 0.5);  // narrower
  CHECK_FALSE(is_h_continuous(GridIntervalFunction(h.domain(), v, h.mask())));
}

TEST_CASE("nearly finite") {
  const GridDomain g(Box({0.0}, {1.0}), std::size_t{9});
  std::vector<ExtInterval> v(9, ExtInterval::point(1.0));
  Mask D = full_mask(g);
  D[4] = false;
  v[3] = ExtInterval::point(ExtReal::pos_inf());
  const auto f = graph_completion(GridIntervalFunction(g, v), D);
  CHECK(f[4] == ExtInterval(1.0, ExtReal::pos_inf()));
  CHECK(is_h_continuous(f));
  // node 3 is an open point carrying +inf
  CHECK_FALSE(is_nearly_finite(f));
  std::vector<ExtInterval> w(9, ExtInterval::point(1.0));
  w[4] = ExtInterval(1.0, ExtReal::pos_inf());
  CHECK(is_nearly_finite(GridIntervalFunction(g, w)));
  const auto inf = GridIntervalFunction::constant(g, ExtInterval::point(ExtReal::pos_inf()));
  CHECK(is_h_continuous(inf));
  CHECK_FALSE(is_nearly_finite(inf));
}

TEST_CASE("semicontinuity of the envelopes in the discrete topology") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const GridDomain g = random_domain(rng);
    const Mask D = oracle::random_dense_mask(g, rng, 0.5);
    const auto f = random_point_function(g, rng, full_mask(g));
    const auto c = graph_completion(f, D);
    for (std::size_t x = 0; x < c.size(); ++x) {
      CHECK(lower_semicontinuous_at(c, D, x));
      CHECK(upper_semicontinuous_at(c, D, x));
      if (D[x]) {
        CHECK(endpoint_continuous_at(c, Endpoint::lower, D, x));
        CHECK(endpoint_continuous_at(c, Endpoint::upper, D, x));
      }
    }
  }
}

TEST_CASE("discrete closure") {
  const GridDomain g(Box({0.0}, {1.0}), std::size_t{5});
  const Mask D{true, false, true, true, true};
  CHECK(discrete_closure(g, D, {true, false, false, false, false}) == Mask{true, true, false, false, false});
  CHECK(is_discretely_closed(g, D, {false, true, false, false, false}));
  CHECK_FALSE(is_discretely_closed(g, D, {false, false, true, false, false}));
}

TEST_CASE("discontinuity report on sin(1/x)") {
  const auto c = assimilate_f0(oracle::sin_inverse_sample());
  CHECK(c[500].lo().value() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(c[500].hi().value() == doctest::Approx(1.0).epsilon(1e-12));
  const double eps[] = {0.5, 1.0, 1.9, 2.5};
  const auto r = discontinuity_report(c, eps);
  CHECK(r.gamma_nodes == std::vector<std::size_t>{500});
  CHECK(r.levels[1].nodes == std::vector<std::size_t>{500});
  CHECK(r.levels[3].nodes.empty());
  for (const auto& level : r.levels) {
    CHECK(level.closed);
    CHECK(level.nowhere_dense);
  }
  CHECK(format_report(r).rfind("gamma_nodes 1\neps 0.5 nodes 1 nowhere_dense yes closed yes", 0) == 0);
  const double bad[] = {0.0};
  CHECK_THROWS_AS(discontinuity_report(c, bad), InvalidInput);
}

TEST_CASE("assimilation of nd-equivalent inputs gives the same output") {
  const auto u = oracle::heaviside_sample(1.0);
  const auto v = oracle::heaviside_sample(-42.0);
  CHECK(nd_equivalent(u, v));
  CHECK(same_values(assimilate_f0(u), assimilate_f0(v)));
  std::vector<ExtInterval> bad = u.values();
  bad[3] = ExtInterval(0.0, 1.0);
  CHECK_THROWS_AS(assimilate_f0(GridIntervalFunction(u.domain(), bad, u.mask())), InvalidInput);
}

TEST_CASE("dense determination on random instances") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const GridDomain g = random_domain(rng);
    const Mask D = oracle::random_dense_mask(g, rng, 0.4);
    const auto a = graph_completion(random_point_function(g, rng, full_mask(g)), D);
    // same values on D, arbitrary elsewhere, then completed
    std::vector<ExtInterval> other = a.values();
    for (std::size_t x = 0; x < other.size(); ++x)
      if (!D[x]) other[x] = ExtInterval::point(static_cast<double>(trial));
    const auto b = graph_completion(GridIntervalFunction(g, other, D), D);
    CHECK(same_values(a, b));
    CHECK(dense_determination_check(a, b, D));
  }
  // Premise false: different values on D.
  const GridDomain g(Box({0.0}, {1.0}), std::size_t{5});
  const auto f = GridIntervalFunction::constant(g, ExtInterval::point(0.0));
  const auto h = GridIntervalFunction::constant(g, ExtInterval::point(1.0));
  CHECK(dense_determination_check(f, h, full_mask(g)));
}

TEST_CASE("suprema and infima of finite families") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const GridDomain g = random_domain(rng);
    const Mask D = oracle::random_dense_mask(g, rng, 0.3);
    std::vector<GridIntervalFunction> family;
    for (int k = 0; k < 3; ++k) family.push_back(graph_completion(random_point_function(g, rng, full_mask(g)), D));
    const auto sup = h_supremum(family);
    const auto inf = h_infimum(family);
    CHECK(is_h_continuous(sup));
    CHECK(is_h_continuous(inf));
    for (const auto& f : family) {
      CHECK(nd_leq(f, sup));
      CHECK(nd_leq(inf, f));
    }
  }
  CHECK_THROWS_AS(h_supremum({}), InvalidInput);
}
