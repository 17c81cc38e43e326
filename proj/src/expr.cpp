#include "ordcomp/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>

#include "ordcomp/error.hpp"

namespace ordcomp {
namespace {

using Op = Expression::Instruction::Op;

constexpr std::array<const char*, 11> kFunctions = {"sin",  "cos",  "tan",  "exp",  "log", "sqrt",
                                                    "abs",  "tanh", "sinh", "cosh", "atan"};

double call(std::size_t id, double a) {
  switch (id) {
    case 0: return std::sin(a);
    case 1: return std::cos(a);
    case 2: return std::tan(a);
    case 3: return std::exp(a);
    case 4: return std::log(a);
    case 5: return std::sqrt(a);
    case 6: return std::fabs(a);
    case 7: return std::tanh(a);
    case 8: return std::sinh(a);
    case 9: return std::cosh(a);
    default: return std::atan(a);
  }
}

class Parser {
public:
  Parser(std::string_view src, const MultiIndexSet* jets, std::size_t line, std::size_t offset)
      : src_(src), jets_(jets), line_(line), offset_(offset) {}

  std::vector<Expression::Instruction> run(bool& uses_jet) {
    skip_space();
    if (pos_ == src_.size()) fail("empty expression");
    sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    uses_jet = uses_jet_;
    return std::move(out_);
  }

private:
  [[noreturn]] void fail(const std::string& msg, std::optional<std::size_t> at = std::nullopt) const {
    throw ParseError(msg, line_ == 0 ? 1 : line_, offset_ + at.value_or(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void emit(Op op, double value = 0.0, std::size_t index = 0) { out_.push_back({op, value, index}); }

  void sum() {
    product();
    for (;;) {
      if (accept('+')) {
        product();
        emit(Op::add);
      } else if (accept('-')) {
        product();
        emit(Op::sub);
      } else {
        return;
      }
    }
  }

  void product() {
    unary();
    for (;;) {
      if (accept('*')) {
        unary();
        emit(Op::mul);
      } else if (accept('/')) {
        unary();
        emit(Op::div);
      } else {
        return;
      }
    }
  }

  // Unary minus binds weaker than ^, so -x^2 is -(x^2).
  void unary() {
    if (accept('-')) {
      unary();
      emit(Op::negate);
    } else if (accept('+')) {
      unary();
    } else {
      power();
    }
  }

  void power() {
    primary();
    if (accept('^')) {
      unary();
      emit(Op::pow);
    }
  }

  void primary() {
    skip_space();
    if (pos_ == src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (accept('(')) {
      sum();
      if (!accept(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return symbol();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  void number() {
    const std::string rest(src_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    emit(Op::constant, v);
  }

  void symbol() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    if (name == "pi") return emit(Op::constant, std::numbers::pi);
    if (name == "e") return emit(Op::constant, std::numbers::e);
    for (std::size_t id = 0; id < kFunctions.size(); ++id) {
      if (name == kFunctions[id]) {
        if (!accept('(')) fail("expected '(' after " + name);
        sum();
        if (!accept(')')) fail("expected ')'");
        return emit(Op::call, 0.0, id);
      }
    }
    if (jets_ == nullptr) fail("unknown symbol '" + name + "' in constant expression", start);
    const std::size_t n = jets_->dims();
    if (name == "x" && n == 1) return emit(Op::coordinate, 0.0, 0);
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '9') {
      const std::size_t axis = static_cast<std::size_t>(name[1] - '1');
      if (axis >= n) fail("coordinate '" + name + "' exceeds the dimension", start);
      return emit(Op::coordinate, 0.0, axis);
    }
    if (name.rfind("xi_", 0) == 0) return emit(Op::jet, 0.0, jet_slot(name.substr(3), start));
    fail("unknown symbol '" + name + "'", start);
  }

  std::size_t jet_slot(const std::string& digits, std::size_t start) {
    const std::size_t n = jets_->dims();
    if (digits.empty()) fail("missing derivative index", start);
    for (char d : digits) {
      if (!std::isdigit(static_cast<unsigned char>(d))) fail("malformed derivative index '" + digits + "'", start);
    }
    MultiIndex p{};
    if (digits == "0") {
      // value in every dimension
    } else if (n == 1) {
      p[0] = static_cast<unsigned>(std::stoul(digits));
    } else {
      if (digits.size() != n) fail("derivative index needs one digit per axis", start);
      for (std::size_t a = 0; a < n; ++a) p[a] = static_cast<unsigned>(digits[a] - '0');
    }
    const auto slot = jets_->index_of(p);
    if (!slot) fail("derivative order of xi_" + digits + " exceeds the problem order", start);
    uses_jet_ = true;
    return *slot;
  }

  std::string_view src_;
  const MultiIndexSet* jets_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
  bool uses_jet_ = false;
  std::vector<Expression::Instruction> out_;
};

}  // namespace

Expression Expression::parse(std::string_view source, const MultiIndexSet& jets, std::size_t line,
                             std::size_t column_offset) {
  Expression e;
  e.source_ = std::string(source);
  e.program_ = Parser(source, &jets, line, column_offset).run(e.uses_jet_);
  return e;
}

double Expression::parse_constant(std::string_view source, std::size_t line, std::size_t column_offset) {
  Expression e;
  e.source_ = std::string(source);
  e.program_ = Parser(source, nullptr, line, column_offset).run(e.uses_jet_);
  return e.evaluate({}, {});
}

double Expression::evaluate(std::span<const double> x, std::span<const double> jet) const {
  // Expressions are tiny, so a fixed stack is enough; depth is bounded by the program length.
  std::vector<double> stack;
  stack.reserve(program_.size());
  for (const Instruction& ins : program_) {
    switch (ins.op) {
      case Op::constant: stack.push_back(ins.value); break;
      case Op::coordinate: stack.push_back(x[ins.index]); break;
      case Op::jet: stack.push_back(jet[ins.index]); break;
      case Op::negate: stack.back() = -stack.back(); break;
      case Op::call: stack.back() = call(ins.index, stack.back()); break;
      default: {
        const double b = stack.back();
        stack.pop_back();
        double& a = stack.back();
        switch (ins.op) {
          case Op::add: a += b; break;
          case Op::sub: a -= b; break;
          case Op::mul: a *= b; break;
          case Op::div: a /= b; break;
          default: a = std::pow(a, b); break;
        }
      }
    }
  }
  return stack.back();
}

}  // namespace ordcomp
