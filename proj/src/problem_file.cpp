#include "ordcomp/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>

#include "ordcomp/error.hpp"
#include "ordcomp/expr.hpp"

namespace ordcomp {
namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // 0-based offset of the value in its line
};

std::size_t parse_count(const Entry& e, const char* key) {
  const double v = Expression::parse_constant(e.value, e.line, e.column);
  if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ParseError(std::string(key) + " must be a positive integer", e.line, e.column + 1);
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_corner(const Entry& e, std::size_t dims, const char* key) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = e.value.find(',', start);
    const std::size_t end = comma == std::string::npos ? e.value.size() : comma;
    out.push_back(Expression::parse_constant(std::string_view(e.value).substr(start, end - start), e.line,
                                             e.column + start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != dims) {
    throw ParseError(std::string(key) + " needs " + std::to_string(dims) + " values", e.line, e.column + 1);
  }
  return out;
}

}  // namespace

PdeProblem make_problem(const Box& domain, std::size_t order, const std::string& F, const std::string& f) {
  PdeProblem p;
  p.domain = domain;
  p.indices = MultiIndexSet(domain.dims(), order);
  const Expression op = Expression::parse(F, p.indices);
  const Expression rhs = Expression::parse(f, p.indices);
  if (rhs.uses_jet()) throw InvalidInput("f may not depend on jet symbols");
  p.F = [op](std::span<const double> x, std::span<const double> jet) { return op.evaluate(x, jet); };
  p.f = [rhs](std::span<const double> x) { return rhs.evaluate(x, {}); };
  p.operator_text = F;
  p.rhs_text = f;
  return p;
}

PdeProblem parse_problem(std::istream& in) {
  std::map<std::string, Entry> entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::size_t hash = raw.find('#');
    const std::string line = raw.substr(0, hash);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, first + 1);
    std::string key = line.substr(first, eq - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    static const char* const kKeys[] = {"dimension", "order", "lower", "upper", "F", "f"};
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw ParseError("unknown key '" + key + "'", line_no, first + 1);
    }
    if (entries.count(key)) throw ParseError("duplicate key '" + key + "'", line_no, first + 1);
    const std::size_t vstart = line.find_first_not_of(" \t", eq + 1);
    if (vstart == std::string::npos) throw ParseError("missing value for '" + key + "'", line_no, eq + 2);
    std::string value = line.substr(vstart);
    value.erase(value.find_last_not_of(" \t") + 1);
    entries[key] = Entry{value, line_no, vstart};
  }
  // Values are checked in key order, so a bad value is reported before a later missing key.
  auto require = [&](const char* key) -> const Entry& {
    if (!entries.count(key)) throw ParseError(std::string("missing key '") + key + "'", line_no + 1, 1);
    return entries[key];
  };
  const std::size_t dims = parse_count(require("dimension"), "dimension");
  if (dims > 3) throw ParseError("dimension must be 1, 2 or 3", entries["dimension"].line, entries["dimension"].column + 1);
  const Entry& order_entry = require("order");
  const double order_value = Expression::parse_constant(order_entry.value, order_entry.line, order_entry.column);
  if (!(order_value >= 0.0 && order_value <= 8.0) || order_value != static_cast<double>(static_cast<int>(order_value))) {
    throw ParseError("order must be an integer between 0 and 8", order_entry.line, order_entry.column + 1);
  }
  const auto lower = parse_corner(require("lower"), dims, "lower");
  const auto upper = parse_corner(require("upper"), dims, "upper");
  Box box;
  try {
    box = Box(lower, upper);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), entries["upper"].line, entries["upper"].column + 1);
  }

  PdeProblem p;
  p.domain = box;
  p.indices = MultiIndexSet(dims, static_cast<std::size_t>(order_value));
  const Entry& fe = require("F");
  const Entry& re = require("f");
  const Expression op = Expression::parse(fe.value, p.indices, fe.line, fe.column);
  const Expression rhs = Expression::parse(re.value, p.indices, re.line, re.column);
  if (rhs.uses_jet()) throw ParseError("f may not depend on jet symbols", re.line, re.column + 1);
  p.F = [op](std::span<const double> x, std::span<const double> jet) { return op.evaluate(x, jet); };
  p.f = [rhs](std::span<const double> x) { return rhs.evaluate(x, {}); };
  p.operator_text = fe.value;
  p.rhs_text = re.value;
  return p;
}

PdeProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open problem file " + path.string());
  return parse_problem(in);
}

}  // namespace ordcomp
