#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordcomp/multi_index.hpp"

namespace ordcomp {

/**
 * Closed-form expression over the point coordinates and jet entries.
 *
 * Grammar: numbers, + - * / ^ (right-associative), unary minus, parentheses,
 * the constants pi and e, and the functions sin cos tan exp log sqrt abs
 * tanh sinh cosh atan. Symbols: `x` (one dimension) or x1..xn for coordinates;
 * `xi_k` for the k-th derivative in one dimension and `xi_<p1><p2>...` with one
 * digit per axis otherwise (`xi_0` is the value in every dimension).
 *
 * Compiled to a postfix program; evaluation is pure and reentrant.
 */
class Expression {
public:
  Expression() = default;

  /// Throws ParseError with `line` and the 1-based column of the offending
  /// token (shifted by `column_offset`).
  static Expression parse(std::string_view source, const MultiIndexSet& jets, std::size_t line = 0,
                          std::size_t column_offset = 0);
  /// Expression without coordinates or jet symbols.
  static double parse_constant(std::string_view source, std::size_t line = 0, std::size_t column_offset = 0);

  double evaluate(std::span<const double> x, std::span<const double> jet) const;
  const std::string& source() const noexcept { return source_; }
  bool uses_jet() const noexcept { return uses_jet_; }

  struct Instruction {
    enum class Op { constant, coordinate, jet, negate, add, sub, mul, div, pow, call } op;
    double value = 0.0;
    std::size_t index = 0;  // coordinate axis, jet slot or function id
  };

private:
  std::string source_;
  std::vector<Instruction> program_;
  bool uses_jet_ = false;
};

}  // namespace ordcomp
