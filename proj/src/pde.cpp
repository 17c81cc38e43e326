#include "ordcomp/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/random/sobol.hpp>

#include "ordcomp/error.hpp"

namespace ordcomp {
namespace {

double factorial(unsigned k) {
  double r = 1.0;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

double multi_factorial(const MultiIndex& p) { return factorial(p[0]) * factorial(p[1]) * factorial(p[2]); }

// p! / (p - q)! on one axis, the factor produced by differentiating t^p q times.
double falling(unsigned p, unsigned q) {
  double r = 1.0;
  for (unsigned i = 0; i < q; ++i) r *= p - i;
  return r;
}

void require_point(const Point& center, std::span<const double> x) {
  if (x.size() != center.size()) throw InvalidInput("point dimension does not match the polynomial");
}

}  // namespace

Polynomial::Polynomial(Point center, MultiIndexSet terms, std::vector<double> coefficients)
    : center_(std::move(center)), terms_(std::move(terms)), coefficients_(std::move(coefficients)) {
  if (center_.size() != terms_.dims()) throw InvalidInput("polynomial center does not match the term set");
  if (coefficients_.size() != terms_.size()) throw InvalidInput("coefficient count does not match the term set");
}

Polynomial Polynomial::from_jet(Point center, const MultiIndexSet& indices, std::span<const double> jet) {
  if (jet.size() != indices.size()) throw InvalidInput("jet length does not match the index set");
  std::vector<double> c(jet.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = jet[i] / multi_factorial(indices[i]);
  return Polynomial(std::move(center), indices, std::move(c));
}

double Polynomial::operator()(std::span<const double> x) const { return derivative(MultiIndex{}, x); }

double Polynomial::derivative(const MultiIndex& q, std::span<const double> x) const {
  require_point(center_, x);
  const std::size_t n = center_.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const MultiIndex& p = terms_[i];
    double term = coefficients_[i];
    for (std::size_t a = 0; a < n && term != 0.0; ++a) {
      if (p[a] < q[a]) {
        term = 0.0;
        break;
      }
      const unsigned k = p[a] - q[a];
      term *= falling(p[a], q[a]) * std::pow(x[a] - center_[a], static_cast<int>(k));
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::with_coefficient(std::size_t slot, double value) const {
  Polynomial copy = *this;
  copy.coefficients_.at(slot) = value;
  return copy;
}

Jet poly_jet_at(const Polynomial& p, const MultiIndexSet& jet_indices, std::span<const double> x) {
  if (jet_indices.dims() != p.terms().dims()) throw InvalidInput("jet dimension does not match the polynomial");
  Jet jet(jet_indices.size());
  for (std::size_t i = 0; i < jet.size(); ++i) jet[i] = p.derivative(jet_indices[i], x);
  return jet;
}

Jet poly_jet_at(const Polynomial& p, std::span<const double> x) { return poly_jet_at(p, p.terms(), x); }

void PdeProblem::validate() const {
  if (domain.dims() == 0) throw InvalidInput("problem has no domain");
  if (indices.dims() != domain.dims()) throw InvalidInput("jet dimension does not match the domain");
  if (!F || !f) throw InvalidInput("problem needs both F and f");
}

double apply_operator(const PdeProblem& problem, const Polynomial& p, std::span<const double> x) {
  const Jet jet = poly_jet_at(p, problem.indices, x);
  return problem.F(x, jet);
}

double residual(const PdeProblem& problem, const Polynomial& p, std::span<const double> x) {
  return apply_operator(problem, p, x) - problem.f(x);
}

ExtInterval RangeProbe::range() const {
  return ExtInterval(unbounded_below ? ExtReal::neg_inf() : ExtReal(lo),
                     unbounded_above ? ExtReal::pos_inf() : ExtReal(hi));
}

RangeProbe range_probe(const PdeProblem& problem, std::span<const double> x, std::size_t budget) {
  if (budget < 2) throw InvalidInput("range probe budget must be at least 2");
  const std::size_t d = problem.indices.size();
  constexpr std::size_t kAxisSamples = 33;
  constexpr std::size_t kSobolSamples = 256;

  boost::random::sobol qrng(d);
  const double scale = 1.0 / (static_cast<double>(qrng.max()) + 1.0);

  RangeProbe out;
  out.lo = std::numeric_limits<double>::infinity();
  out.hi = -std::numeric_limits<double>::infinity();
  Jet jet(d, 0.0);
  auto take = [&](const Jet& j) {
    const double v = problem.F(x, j);
    if (!std::isfinite(v)) return;
    out.lo = std::min(out.lo, v);
    out.hi = std::max(out.hi, v);
    ++out.samples;
  };

  double prev_lo = 0.0;
  double prev_hi = 0.0;
  double K = 1.0;
  for (std::size_t step = 0; step < budget; ++step, K *= 2.0) {
    prev_lo = out.lo;
    prev_hi = out.hi;
    std::fill(jet.begin(), jet.end(), 0.0);
    take(jet);
    for (std::size_t axis = 0; axis < d; ++axis) {
      for (std::size_t i = 0; i < kAxisSamples; ++i) {
        jet[axis] = -K + 2.0 * K * static_cast<double>(i) / static_cast<double>(kAxisSamples - 1);
        take(jet);
      }
      jet[axis] = 0.0;
    }
    for (std::size_t i = 0; i < kSobolSamples; ++i) {
      for (std::size_t axis = 0; axis < d; ++axis) jet[axis] = K * (2.0 * scale * static_cast<double>(qrng()) - 1.0);
      take(jet);
    }
    out.box_half_width = K;
  }
  if (out.samples == 0) throw SolveFailure("range probe produced no finite value of F");
  if (std::isfinite(prev_lo)) out.unbounded_below = prev_lo - out.lo >= 0.5 * (1.0 + std::fabs(prev_lo));
  if (std::isfinite(prev_hi)) out.unbounded_above = out.hi - prev_hi >= 0.5 * (1.0 + std::fabs(prev_hi));
  return out;
}

double condition23_margin(double rhs) { return 1e-6 * (1.0 + std::fabs(rhs)); }

std::vector<Condition23Verdict> check_condition_23(const PdeProblem& problem, std::span<const Point> points,
                                                   std::size_t budget) {
  problem.validate();
  std::vector<Condition23Verdict> out;
  out.reserve(points.size());
  for (const Point& x : points) {
    Condition23Verdict v;
    v.x = x;
    v.rhs = problem.f(x);
    v.probe = range_probe(problem, x, budget);
    v.margin = condition23_margin(v.rhs);
    const bool below_ok = v.probe.unbounded_below || v.rhs - v.probe.lo >= v.margin;
    const bool above_ok = v.probe.unbounded_above || v.probe.hi - v.rhs >= v.margin;
    v.holds = std::isfinite(v.rhs) && below_ok && above_ok;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Point> probe_lattice(const Box& box, std::size_t per_axis) {
  if (per_axis == 0) throw InvalidInput("probe lattice needs at least one point per axis");
  const std::size_t n = box.dims();
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) total *= per_axis;
  std::vector<Point> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    Point x(n);
    std::size_t rest = k;
    for (std::size_t a = n; a-- > 0;) {
      const std::size_t i = rest % per_axis;
      rest /= per_axis;
      x[a] = box.lower()[a] + box.side(a) * (static_cast<double>(i) + 1.0) / (static_cast<double>(per_axis) + 1.0);
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace ordcomp
