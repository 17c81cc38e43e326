#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ordcomp/error.hpp"
#include "ordcomp/macneille.hpp"

using namespace ordcomp;

namespace {

std::set<ElementSet> lowers_of(const CutLattice& l) {
  std::set<ElementSet> out;
  for (const Cut& c : l.cuts()) out.insert(c.lower);
  return out;
}

}  // namespace

TEST_CASE("poset validation") {
  CHECK_THROWS_AS(FinitePoset({"a", "b"}, {{true, true}, {true, true}}), InvalidInput);  // not antisymmetric
  CHECK_THROWS_AS(FinitePoset({"a"}, {{false}}), InvalidInput);                           // not reflexive
  CHECK_THROWS_AS(FinitePoset::from_relations({"a", "b"}, {{0, 1}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(FinitePoset::from_relations({"a", "a"}, {}), InvalidInput);
  const auto p = FinitePoset::from_relations({"a", "b", "c"}, {{0, 1}, {1, 2}});
  CHECK(p.leq(0, 2));  // transitive closure
}

TEST_CASE("reference completions") {
  CHECK(macneille_complete(FinitePoset::antichain(2)).size() == 4);
  CHECK(macneille_complete(FinitePoset::chain(3)).size() == 3);
  CHECK(macneille_complete(FinitePoset::antichain(0)).size() == 1);
  CHECK(macneille_complete(FinitePoset::antichain(3)).size() == 5);
  // The four-element "bowtie" a,b < c,d gains one middle cut.
  const auto bowtie = FinitePoset::from_relations({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const auto l = macneille_complete(bowtie);
  CHECK(l.size() == 7);
  std::size_t adjoined = 0;
  for (std::size_t i = 0; i < l.size(); ++i) adjoined += l.is_adjoined(i);
  CHECK(adjoined == 3);
}

TEST_CASE("cuts coincide with the closures of all subsets") {
  for (std::size_t n = 0; n <= 4; ++n) {
    const std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
      const auto p = oracle::poset_from_bits(n, bits, id);
      CHECK(lowers_of(macneille_complete(p)) == oracle::all_cut_lowers(p));
    }
  }
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = oracle::random_poset(rng, std::uniform_int_distribution<std::size_t>(5, 9)(rng));
    CHECK(lowers_of(macneille_complete(p)) == oracle::all_cut_lowers(p));
  }
}

TEST_CASE("lattice structure") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = oracle::random_poset(rng, std::uniform_int_distribution<std::size_t>(0, 6)(rng));
    const auto l = macneille_complete(p);
    const auto lp = l.as_poset();
    CHECK(is_complete_lattice(lp));
    CHECK(preserves_bounds_check(p, l));
    CHECK(macneille_complete(lp).size() == l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
      CHECK(is_cut(p, l[i]));
      CHECK(l.leq(l.bottom(), i));
      CHECK(l.leq(i, l.top()));
    }
    // order embedding
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) CHECK(p.leq(a, b) == l.leq(l.embed(a), l.embed(b)));
    // join and meet are bounds
    for (std::size_t a = 0; a < l.size(); ++a) {
      for (std::size_t b = 0; b < l.size(); ++b) {
        const auto j = l.join(a, b), m = l.meet(a, b);
        CHECK(l.leq(a, j));
        CHECK(l.leq(b, j));
        CHECK(l.leq(m, a));
        CHECK(l.leq(m, b));
      }
    }
  }
}

TEST_CASE("completion of a lattice is itself") {
  const auto l = macneille_complete(FinitePoset::antichain(2));
  const auto again = macneille_complete(l.as_poset());
  CHECK(again.size() == l.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK_FALSE(again.is_adjoined(i));
}

TEST_CASE("empty families") {
  const auto l = macneille_complete(FinitePoset::chain(3));
  CHECK(l.join_all({}) == l.bottom());
  CHECK(l.meet_all({}) == l.top());
}

TEST_CASE("pull-back quotient identifies points with equal images") {
  AbstractEquation eq{{"x0", "x1", "x2"}, FinitePoset::chain(2), {1, 0, 1}};
  const auto q = pullback_order(eq);
  CHECK(q.poset.size() == 2);
  CHECK(q.class_of[0] == q.class_of[2]);
  CHECK(q.poset.labels()[0] == "{x0,x2}");
  CHECK(q.poset.leq(q.class_of[1], q.class_of[0]));
  AbstractEquation bad{{"x0"}, FinitePoset::chain(2), {5}};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("solvability criterion agrees with exhaustive search") {
  std::mt19937_64 rng(23);
  std::size_t solvable = 0, total = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t ny = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const std::size_t nx = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
    AbstractEquation eq{oracle::labels(nx, "x"), oracle::random_poset(rng, ny), {}};
    for (std::size_t i = 0; i < nx; ++i) eq.map.push_back(std::uniform_int_distribution<std::size_t>(0, ny - 1)(rng));
    const ElementSet s = std::uniform_int_distribution<ElementSet>(0, (ElementSet{1} << ny) - 1)(rng);
    const Cut target = cut_of(eq.y, s);
    const auto r = solvability_criterion(eq, target);
    CHECK(r.solvable == oracle::solvable_brute(eq, target.lower));
    if (r.solvable) {
      REQUIRE(r.witness.has_value());
      CHECK(extend_to_cuts(r.quotient, eq.y, r.witness->lower) == target);
    }
    solvable += r.solvable;
    ++total;
  }
  // Both verdicts occur, so the comparison is not vacuous.
  CHECK(solvable > 0);
  CHECK(solvable < total);
  CHECK_THROWS_AS(solvability_criterion(AbstractEquation{{}, FinitePoset::antichain(2), {}}, Cut{1, 0}), InvalidInput);
}

TEST_CASE("poset text format") {
  std::istringstream in("# diamond\nbot: a b\na: top\nb: top\n");
  const auto p = parse_poset(in);
  CHECK(p.size() == 4);
  CHECK(p.leq(*p.index_of("bot"), *p.index_of("top")));
  CHECK(macneille_complete(p).size() == 4);

  std::istringstream bad("a: b\nb c: a\n");
  try {
    parse_poset(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  std::istringstream self("a: a\n");
  CHECK_THROWS_AS(parse_poset(self), ParseError);
  std::istringstream cycle("a: b\nb: a\n");
  CHECK_THROWS_AS(parse_poset(cycle), ParseError);
}

TEST_CASE("dot output marks adjoined cuts") {
  std::ostringstream out;
  write_lattice_dot(out, macneille_complete(FinitePoset::antichain(2)));
  const std::string dot = out.str();
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("dashed") != std::string::npos);
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(FinitePoset::antichain(65), InvalidInput);
  CHECK(macneille_complete(FinitePoset::antichain(20)).size() == 22);
  CHECK_THROWS_AS(macneille_complete(FinitePoset::antichain(20), 21), InvalidInput);
}
