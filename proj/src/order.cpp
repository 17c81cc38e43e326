#include "ordcomp/order.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ordcomp/error.hpp"

namespace ordcomp {

ExtReal::ExtReal(double value) : value_(value) {
  if (std::isnan(value)) throw InvalidInput("extended real cannot be NaN");
}

std::string to_string(ExtReal x) {
  switch (x.kind()) {
    case ExtReal::Kind::neg_inf: return "-inf";
    case ExtReal::Kind::pos_inf: return "+inf";
    case ExtReal::Kind::finite: break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x.value());
  return buf;
}

ExtReal parse_ext_real(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty extended real");
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size()) throw InvalidInput("not an extended real: '" + text + "'");
  // Overflowing literals are a caller error, not an infinity.
  if (errno == ERANGE && std::isinf(v)) throw InvalidInput("extended real out of range: '" + text + "'");
  return ExtReal(v);
}

ExtInterval::ExtInterval(ExtReal lo, ExtReal hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw InvalidInput("interval lower endpoint " + to_string(lo) + " exceeds upper endpoint " + to_string(hi));
}

ExtInterval interval_join(const ExtInterval& a, const ExtInterval& b) {
  return ExtInterval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

ExtInterval interval_meet(const ExtInterval& a, const ExtInterval& b) {
  return ExtInterval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

ExtReal width(const ExtInterval& a) {
  if (a.degenerate()) return ExtReal(0.0);
  return ExtReal(a.hi().value() - a.lo().value());
}

std::string to_string(const ExtInterval& a) { return "[" + to_string(a.lo()) + ", " + to_string(a.hi()) + "]"; }

void to_json(nlohmann::json& j, ExtReal x) {
  if (x.is_finite())
    j = x.value();
  else
    j = to_string(x);
}

void from_json(const nlohmann::json& j, ExtReal& x) {
  if (j.is_number()) {
    x = ExtReal(j.get<double>());
  } else if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "-inf")
      x = ExtReal::neg_inf();
    else if (s == "+inf")
      x = ExtReal::pos_inf();
    else
      throw InvalidInput("expected \"-inf\" or \"+inf\", got \"" + s + "\"");
  } else {
    throw InvalidInput("extended real must be a number or an infinity string");
  }
}

void to_json(nlohmann::json& j, const ExtInterval& a) {
  nlohmann::json lo, hi;
  to_json(lo, a.lo());
  to_json(hi, a.hi());
  j = nlohmann::json::array({lo, hi});
}

void from_json(const nlohmann::json& j, ExtInterval& a) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("interval must be a two-element array");
  ExtReal lo, hi;
  from_json(j[0], lo);
  from_json(j[1], hi);
  a = ExtInterval(lo, hi);
}

}  // namespace ordcomp
