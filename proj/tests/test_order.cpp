#include <doctest.h>

#include <cmath>
#include <random>

#include "ordcomp/error.hpp"
#include "ordcomp/order.hpp"

using namespace ordcomp;

namespace {

ExtReal random_ext(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 9);
  const int k = kind(rng);
  if (k == 0) return ExtReal::neg_inf();
  if (k == 1) return ExtReal::pos_inf();
  // Few distinct values so ties are common.
  return ExtReal(static_cast<double>(std::uniform_int_distribution<int>(-3, 3)(rng)));
}

ExtInterval random_interval(std::mt19937_64& rng) {
  ExtReal a = random_ext(rng), b = random_ext(rng);
  if (b < a) std::swap(a, b);
  return ExtInterval(a, b);
}

}  // namespace

TEST_CASE("extended reals order infinities around every finite value") {
  CHECK(ExtReal::neg_inf() < ExtReal(-1e308));
  CHECK(ExtReal(1e308) < ExtReal::pos_inf());
  CHECK(ExtReal(2.0).is_finite());
  CHECK_FALSE(ExtReal::pos_inf().is_finite());
  CHECK_THROWS_AS(ExtReal(std::nan("")), InvalidInput);
}

TEST_CASE("extended reals print and parse") {
  CHECK(to_string(ExtReal::neg_inf()) == "-inf");
  CHECK(to_string(ExtReal::pos_inf()) == "+inf");
  CHECK(parse_ext_real("+inf") == ExtReal::pos_inf());
  CHECK(parse_ext_real("-inf") == ExtReal::neg_inf());
  CHECK(parse_ext_real(to_string(ExtReal(0.1))) == ExtReal(0.1));
  CHECK_THROWS_AS(parse_ext_real("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_ext_real("1e999"), InvalidInput);
}

TEST_CASE("interval construction and predicates") {
  CHECK_THROWS_AS(ExtInterval(2.0, 1.0), InvalidInput);
  const ExtInterval a(0.0, 1.0);
  CHECK(a.contains(0.5));
  CHECK_FALSE(a.contains(1.5));
  CHECK(ExtInterval::point(3.0).degenerate());
  CHECK(ExtInterval(0.25, 0.5).subset_of(a));
  CHECK_FALSE(ExtInterval(ExtReal::neg_inf(), 0.0).finite());
}

TEST_CASE("width treats equal infinities as zero") {
  CHECK(width(ExtInterval(1.0, 3.5)) == ExtReal(2.5));
  CHECK(width(ExtInterval::point(ExtReal::pos_inf())) == ExtReal(0.0));
  CHECK(width(ExtInterval(ExtReal::neg_inf(), 0.0)) == ExtReal::pos_inf());
}

TEST_CASE("componentwise order: join and meet are the least upper and greatest lower bounds") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const ExtInterval a = random_interval(rng), b = random_interval(rng), c = random_interval(rng);
    const ExtInterval j = interval_join(a, b), m = interval_meet(a, b);
    CHECK(interval_leq(a, j));
    CHECK(interval_leq(b, j));
    CHECK(interval_leq(m, a));
    CHECK(interval_leq(m, b));
    if (interval_leq(a, c) && interval_leq(b, c)) CHECK(interval_leq(j, c));
    if (interval_leq(c, a) && interval_leq(c, b)) CHECK(interval_leq(c, m));
    CHECK(interval_join(a, b) == interval_join(b, a));
    CHECK(interval_join(interval_join(a, b), c) == interval_join(a, interval_join(b, c)));
    CHECK(interval_meet(a, interval_join(a, b)) == a);
    CHECK(interval_join(a, interval_meet(a, b)) == a);
    // partial order axioms
    CHECK(interval_leq(a, a));
    if (interval_leq(a, b) && interval_leq(b, a)) CHECK(a == b);
    if (interval_leq(a, b) && interval_leq(b, c)) CHECK(interval_leq(a, c));
  }
}

TEST_CASE("intervals round-trip through json") {
  const ExtInterval a(ExtReal::neg_inf(), 2.5);
  nlohmann::json j = a;
  CHECK(j.dump() == R"(["-inf",2.5])");
  CHECK(j.get<ExtInterval>() == a);
  CHECK_THROWS(nlohmann::json::parse(R"([3, 1])").get<ExtInterval>());
}
