#pragma once

#include <compare>
#include <limits>
#include <string>

#include <json.hpp>

namespace ordcomp {

/**
 * An element of the extended real line: a finite real, -inf or +inf.
 *
 * Stored as a double whose only admissible non-finite states are the two
 * infinities; NaN is rejected at construction, so the order is total.
 */
class ExtReal {
public:
  enum class Kind { neg_inf, finite, pos_inf };

  constexpr ExtReal() noexcept = default;
  ExtReal(double value);  // NOLINT(google-explicit-constructor): reals embed in the extended reals

  static constexpr ExtReal neg_inf() noexcept { return ExtReal(Raw{}, -std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal pos_inf() noexcept { return ExtReal(Raw{}, std::numeric_limits<double>::infinity()); }

  constexpr double value() const noexcept { return value_; }
  constexpr Kind kind() const noexcept {
    if (value_ == std::numeric_limits<double>::infinity()) return Kind::pos_inf;
    if (value_ == -std::numeric_limits<double>::infinity()) return Kind::neg_inf;
    return Kind::finite;
  }
  constexpr bool is_finite() const noexcept { return kind() == Kind::finite; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.value_ == b.value_; }
  friend constexpr std::strong_ordering operator<=>(ExtReal a, ExtReal b) noexcept {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

private:
  struct Raw {};
  constexpr ExtReal(Raw, double v) noexcept : value_(v) {}

  double value_ = 0.0;
};

/// Text spelling used in every report and file format: finite values in
/// round-trip precision, infinities as "-inf" / "+inf".
std::string to_string(ExtReal x);
/// Inverse of to_string; also accepts "inf" and "-Infinity"-style spellings.
ExtReal parse_ext_real(const std::string& text);

/**
 * Closed interval [lo, hi] of extended reals with lo <= hi.
 *
 * A degenerate interval [a, a] stands for the point a.
 */
class ExtInterval {
public:
  constexpr ExtInterval() noexcept = default;
  /// Throws InvalidInput when lo > hi.
  ExtInterval(ExtReal lo, ExtReal hi);

  static ExtInterval point(ExtReal a) { return ExtInterval(a, a); }

  constexpr ExtReal lo() const noexcept { return lo_; }
  constexpr ExtReal hi() const noexcept { return hi_; }
  constexpr bool degenerate() const noexcept { return lo_ == hi_; }
  constexpr bool finite() const noexcept { return lo_.is_finite() && hi_.is_finite(); }
  constexpr bool contains(ExtReal x) const noexcept { return lo_ <= x && x <= hi_; }
  /// Set inclusion, not the interval order.
  constexpr bool subset_of(const ExtInterval& other) const noexcept {
    return other.lo_ <= lo_ && hi_ <= other.hi_;
  }

  friend constexpr bool operator==(const ExtInterval&, const ExtInterval&) noexcept = default;

private:
  ExtReal lo_;
  ExtReal hi_;
};

/// Componentwise order: [a,b] <= [c,d] iff a <= c and b <= d.
constexpr bool interval_leq(const ExtInterval& a, const ExtInterval& b) noexcept {
  return a.lo() <= b.lo() && a.hi() <= b.hi();
}

/// Least upper bound under interval_leq.
ExtInterval interval_join(const ExtInterval& a, const ExtInterval& b);
/// Greatest lower bound under interval_leq.
ExtInterval interval_meet(const ExtInterval& a, const ExtInterval& b);

/// hi - lo, where (+inf) - (-inf) = +inf and an infinite endpoint minus itself is 0.
ExtReal width(const ExtInterval& a);

std::string to_string(const ExtInterval& a);

// Report serialization: a two-element array, infinities as "-inf"/"+inf" strings.
void to_json(nlohmann::json& j, ExtReal x);
void from_json(const nlohmann::json& j, ExtReal& x);
void to_json(nlohmann::json& j, const ExtInterval& a);
void from_json(const nlohmann::json& j, ExtInterval& a);

}  // namespace ordcomp
