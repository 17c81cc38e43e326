#include "ordcomp/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ordcomp/error.hpp"

namespace ordcomp {
namespace {

constexpr const char* kCertificateNote =
    "certificates are sampled on finite point sets, not interval-arithmetic rigorous";

// Whitespace tokenizer that remembers line and column for error messages.
class Tokens {
public:
  Tokens(std::string line, std::size_t line_no) : line_(std::move(line)), line_no_(line_no) {}

  bool done() {
    skip();
    return pos_ >= line_.size();
  }

  std::string next(const char* what) {
    skip();
    if (pos_ >= line_.size()) fail(std::string("expected ") + what);
    start_ = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    return line_.substr(start_, pos_ - start_);
  }

  void expect(const std::string& word) {
    const std::string t = next(word.c_str());
    if (t != word) fail("expected '" + word + "', found '" + t + "'");
  }

  double real(const char* what) {
    const std::string t = next(what);
    const ExtReal v = parse_or_fail(t, what);
    if (!v.is_finite()) fail(std::string(what) + " must be finite");
    return v.value();
  }

  ExtReal ext_real(const char* what) { return parse_or_fail(next(what), what); }

  std::size_t count(const char* what) {
    const std::string t = next(what);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0' || t[0] == '-') fail(std::string("malformed ") + what + " '" + t + "'");
    return static_cast<std::size_t>(v);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_no_, start_ + 1); }

private:
  ExtReal parse_or_fail(const std::string& t, const char* what) {
    try {
      return parse_ext_real(t);
    } catch (const InvalidInput&) {
      fail(std::string("malformed ") + what + " '" + t + "'");
    }
  }

  void skip() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    start_ = pos_;
  }

  std::string line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
};

// Next non-blank, non-comment line.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

Tokens keyed_line(std::istream& in, std::size_t& line_no, const std::string& key) {
  std::string line;
  if (!next_line(in, line, line_no)) throw ParseError("missing '" + key + "' line", line_no + 1, 1);
  Tokens t(line, line_no);
  t.expect(key);
  return t;
}

Point read_point(Tokens& t, std::size_t n, const char* what) {
  Point p(n);
  for (double& v : p) v = t.real(what);
  return p;
}

void write_point(std::ostream& out, const Point& p) {
  for (double v : p) out << ' ' << format_real(v);
}

}  // namespace

std::string format_real(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "+inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_grid(std::ostream& out, const GridIntervalFunction& f) {
  const GridDomain& g = f.domain();
  out << "dims " << g.dims() << '\n' << "lower";
  write_point(out, g.box().lower());
  out << '\n' << "upper";
  write_point(out, g.box().upper());
  out << '\n' << "resolution";
  for (std::size_t r : g.resolution()) out << ' ' << r;
  out << '\n';
  for (std::size_t i = 0; i < f.size(); ++i)
    out << to_string(f[i].lo()) << ' ' << to_string(f[i].hi()) << ' ' << (f.masked(i) ? 1 : 0) << '\n';
}

GridIntervalFunction read_grid(std::istream& in) {
  std::size_t line_no = 0;
  Tokens dims_line = keyed_line(in, line_no, "dims");
  const std::size_t n = dims_line.count("dimension");
  if (n == 0 || n > GridDomain::kMaxDims) dims_line.fail("dimension must be 1, 2 or 3");
  Tokens lower_line = keyed_line(in, line_no, "lower");
  const Point lower = read_point(lower_line, n, "lower corner");
  Tokens upper_line = keyed_line(in, line_no, "upper");
  const Point upper = read_point(upper_line, n, "upper corner");
  Tokens res_line = keyed_line(in, line_no, "resolution");
  std::vector<std::size_t> res(n);
  for (auto& r : res) r = res_line.count("resolution");
  GridDomain domain;
  try {
    domain = GridDomain(Box(lower, upper), res);
  } catch (const InvalidInput& e) {
    res_line.fail(e.what());
  }
  std::vector<ExtInterval> values;
  Mask mask;
  values.reserve(domain.node_count());
  std::string line;
  while (values.size() < domain.node_count()) {
    if (!next_line(in, line, line_no)) throw ParseError("grid file ends before all nodes were read", line_no + 1, 1);
    Tokens t(line, line_no);
    const ExtReal lo = t.ext_real("lower endpoint");
    const ExtReal hi = t.ext_real("upper endpoint");
    if (hi < lo) t.fail("lower endpoint exceeds upper endpoint");
    const std::string m = t.next("mask flag");
    if (m != "0" && m != "1") t.fail("mask flag must be 0 or 1");
    if (!t.done()) t.fail("unexpected trailing text");
    values.emplace_back(lo, hi);
    mask.push_back(m == "1");
  }
  if (next_line(in, line, line_no)) throw ParseError("unexpected text after the last node", line_no, 1);
  return GridIntervalFunction(domain, std::move(values), std::move(mask));
}

void write_solution(std::ostream& out, const PiecewiseSolution& s) {
  const std::size_t n = s.domain.dims();
  out << "# piecewise polynomial solution; " << kCertificateNote << '\n';
  out << "eps " << format_real(s.eps) << '\n';
  out << "side " << to_string(s.side) << '\n';
  out << "dimension " << n << '\n';
  out << "domain";
  write_point(out, s.domain.lower());
  write_point(out, s.domain.upper());
  out << '\n';
  for (const SolutionPiece& p : s.pieces) {
    out << "box";
    write_point(out, p.box.lower());
    write_point(out, p.box.upper());
    out << " delta " << format_real(p.delta) << " center";
    write_point(out, p.poly.center());
    out << " degree " << p.poly.degree() << " coeffs";
    for (double c : p.poly.coefficients()) out << ' ' << format_real(c);
    out << " cert " << format_real(p.min_residual) << ' ' << format_real(p.max_residual) << '\n';
  }
}

PiecewiseSolution read_solution(std::istream& in) {
  std::size_t line_no = 0;
  PiecewiseSolution s;
  Tokens eps_line = keyed_line(in, line_no, "eps");
  s.eps = eps_line.real("eps");
  if (!(s.eps >= 0.0)) eps_line.fail("eps must be non-negative");
  Tokens side_line = keyed_line(in, line_no, "side");
  const std::string side = side_line.next("side");
  if (side != "lower" && side != "upper") side_line.fail("side must be 'lower' or 'upper'");
  s.side = parse_side(side);
  Tokens dim_line = keyed_line(in, line_no, "dimension");
  const std::size_t n = dim_line.count("dimension");
  if (n == 0 || n > 3) dim_line.fail("dimension must be 1, 2 or 3");
  Tokens dom_line = keyed_line(in, line_no, "domain");
  const Point dlo = read_point(dom_line, n, "domain corner");
  const Point dhi = read_point(dom_line, n, "domain corner");
  try {
    s.domain = Box(dlo, dhi);
  } catch (const InvalidInput& e) {
    dom_line.fail(e.what());
  }

  std::string line;
  std::vector<Box> boxes;
  while (next_line(in, line, line_no)) {
    Tokens t(line, line_no);
    t.expect("box");
    SolutionPiece p;
    const Point lo = read_point(t, n, "box corner");
    const Point hi = read_point(t, n, "box corner");
    try {
      p.box = Box(lo, hi);
    } catch (const InvalidInput& e) {
      t.fail(e.what());
    }
    t.expect("delta");
    p.delta = t.real("delta");
    t.expect("center");
    Point c = read_point(t, n, "center");
    t.expect("degree");
    const std::size_t degree = t.count("degree");
    MultiIndexSet terms;
    try {
      terms = MultiIndexSet(n, degree);
    } catch (const InvalidInput& e) {
      t.fail(e.what());
    }
    t.expect("coeffs");
    std::vector<double> coeffs(terms.size());
    for (double& v : coeffs) v = t.real("coefficient");
    t.expect("cert");
    p.min_residual = t.real("certificate minimum");
    p.max_residual = t.real("certificate maximum");
    if (!t.done()) t.fail("unexpected trailing text");
    p.poly = Polynomial(std::move(c), terms, std::move(coeffs));
    boxes.push_back(p.box);
    s.pieces.push_back(std::move(p));
  }
  s.skeleton = partition_skeleton(s.domain, boxes);
  return s;
}

nlohmann::json certificate_report(const PdeProblem& problem, const PiecewiseSolution& s, const AuditReport& audit,
                                  std::size_t samples_per_box) {
  using nlohmann::json;
  const auto [band_lo, band_hi] = side_band(s.side, s.eps);
  json pieces = json::array();
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    const SolutionPiece& p = s.pieces[i];
    json entry{{"lower", p.box.lower()},
               {"upper", p.box.upper()},
               {"delta", p.delta},
               {"certified_residual", json::array({p.min_residual, p.max_residual})}};
    if (i < audit.piece_ranges.size())
      entry["audited_residual"] = json::array({audit.piece_ranges[i].first, audit.piece_ranges[i].second});
    pieces.push_back(std::move(entry));
  }
  json violations = json::array();
  for (const Violation& v : audit.violations)
    violations.push_back({{"piece", v.piece}, {"x", v.x}, {"residual", v.residual}});
  return json{{"note", kCertificateNote},
              {"operator", problem.operator_text},
              {"rhs", problem.rhs_text},
              {"eps", s.eps},
              {"side", to_string(s.side)},
              {"band", json::array({band_lo, band_hi})},
              {"seed", audit.seed},
              {"samples_per_box", samples_per_box},
              {"box_count", s.pieces.size()},
              {"skeleton_faces", s.skeleton.size()},
              {"depth", s.depth},
              {"audit",
               {{"samples", audit.samples},
                {"residual", json::array({audit.min_residual, audit.max_residual})},
                {"violation_count", audit.violation_count},
                {"violations", violations},
                {"passed", audit.passed()}}},
              {"pieces", pieces}};
}

void write_refine_csv(std::ostream& out, const RefinementRun& run) {
  out << "level,eps,side,box_count,min_residual,max_residual,assimilated_max_width\n";
  for (const RefinementLevel& level : run.levels) {
    for (const RefinementSide* side : {&level.lower, &level.upper}) {
      out << level.level << ',' << format_real(level.eps) << ',' << to_string(side->solution.side) << ','
          << side->solution.pieces.size() << ',' << format_real(side->audit.min_residual) << ','
          << format_real(side->audit.max_residual) << ',' << format_real(side->assimilated_max_width) << '\n';
    }
  }
}

}  // namespace ordcomp
