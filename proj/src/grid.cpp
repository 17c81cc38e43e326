#include "ordcomp/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ordcomp/error.hpp"

namespace ordcomp {

Box::Box(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw InvalidInput("box needs at least one axis");
  if (lower_.size() != upper_.size()) throw InvalidInput("box corners have different dimensions");
  for (std::size_t a = 0; a < lower_.size(); ++a) {
    if (!std::isfinite(lower_[a]) || !std::isfinite(upper_[a]))
      throw InvalidInput("box corners must be finite; truncate unbounded domains");
    if (!(lower_[a] < upper_[a]))
      throw InvalidInput("box lower corner must be below upper corner on axis " + std::to_string(a));
  }
}

double Box::max_side() const {
  double s = 0.0;
  for (std::size_t a = 0; a < dims(); ++a) s = std::max(s, side(a));
  return s;
}

double Box::diagonal() const {
  double s = 0.0;
  for (std::size_t a = 0; a < dims(); ++a) s += side(a) * side(a);
  return std::sqrt(s);
}

Point Box::center() const {
  Point c(dims());
  for (std::size_t a = 0; a < dims(); ++a) c[a] = 0.5 * (lower_[a] + upper_[a]);
  return c;
}

bool Box::contains(const Point& x) const {
  for (std::size_t a = 0; a < dims(); ++a)
    if (x[a] < lower_[a] || x[a] > upper_[a]) return false;
  return true;
}

bool Box::contains_interior(const Point& x) const {
  for (std::size_t a = 0; a < dims(); ++a)
    if (!(x[a] > lower_[a] && x[a] < upper_[a])) return false;
  return true;
}

GridDomain::GridDomain(Box box, std::vector<std::size_t> resolution)
    : box_(std::move(box)), resolution_(std::move(resolution)) {
  if (box_.dims() == 0 || box_.dims() > kMaxDims)
    throw InvalidInput("grid dimension must be between 1 and 3");
  if (resolution_.size() != box_.dims()) throw InvalidInput("one resolution per axis required");
  node_count_ = 1;
  for (auto r : resolution_) {
    if (r < 3) throw InvalidInput("grid resolution must be at least 3 points per axis");
    node_count_ *= r;
  }
}

GridDomain::GridDomain(Box box, std::size_t resolution)
    : GridDomain(box, std::vector<std::size_t>(box.dims(), resolution)) {}

double GridDomain::spacing(std::size_t axis) const {
  return box_.side(axis) / static_cast<double>(resolution_[axis] + 1);
}

double GridDomain::coordinate(std::size_t axis, std::size_t index) const {
  return box_.lower()[axis] + box_.side(axis) * static_cast<double>(index + 1) / static_cast<double>(resolution_[axis] + 1);
}

Point GridDomain::node_point(std::size_t node) const {
  const auto idx = unflatten(node);
  Point p(dims());
  for (std::size_t a = 0; a < dims(); ++a) p[a] = coordinate(a, idx[a]);
  return p;
}

GridDomain::NodeIndex GridDomain::unflatten(std::size_t node) const {
  NodeIndex idx{};
  for (std::size_t a = dims(); a-- > 0;) {
    idx[a] = node % resolution_[a];
    node /= resolution_[a];
  }
  return idx;
}

std::size_t GridDomain::flatten(const NodeIndex& index) const {
  std::size_t node = 0;
  for (std::size_t a = 0; a < dims(); ++a) node = node * resolution_[a] + index[a];
  return node;
}

void GridDomain::for_each_in_ball(std::size_t node, std::size_t radius,
                                  const std::function<void(std::size_t)>& visit) const {
  const auto center = unflatten(node);
  NodeIndex lo{}, hi{};
  for (std::size_t a = 0; a < dims(); ++a) {
    lo[a] = center[a] >= radius ? center[a] - radius : 0;
    hi[a] = std::min(center[a] + radius, resolution_[a] - 1);
  }
  NodeIndex cur = lo;
  while (true) {
    visit(flatten(cur));
    std::size_t a = dims();
    while (a-- > 0) {
      if (cur[a] < hi[a]) {
        ++cur[a];
        break;
      }
      cur[a] = lo[a];
    }
    if (a == static_cast<std::size_t>(-1)) return;
  }
}

void GridDomain::for_each_cell(const std::function<void(const std::vector<std::size_t>&)>& visit) const {
  const std::size_t n = dims();
  NodeIndex origin{};
  std::vector<std::size_t> nodes(std::size_t{1} << n);
  while (true) {
    for (std::size_t corner = 0; corner < nodes.size(); ++corner) {
      NodeIndex idx = origin;
      for (std::size_t a = 0; a < n; ++a) idx[a] += (corner >> a) & 1u;
      nodes[corner] = flatten(idx);
    }
    visit(nodes);
    std::size_t a = n;
    while (a-- > 0) {
      if (origin[a] + 2 < resolution_[a]) {
        ++origin[a];
        break;
      }
      origin[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) return;
  }
}

Mask full_mask(const GridDomain& domain) { return Mask(domain.node_count(), true); }

namespace {

// First cell whose nodes are all excluded, or npos.
std::size_t first_excluded_cell(const GridDomain& domain, const Mask& mask) {
  std::size_t found = static_cast<std::size_t>(-1);
  domain.for_each_cell([&](const std::vector<std::size_t>& nodes) {
    if (found != static_cast<std::size_t>(-1)) return;
    if (std::none_of(nodes.begin(), nodes.end(), [&](std::size_t n) { return mask[n]; })) found = nodes.front();
  });
  return found;
}

}  // namespace

bool is_dense(const GridDomain& domain, const Mask& mask) {
  if (mask.size() != domain.node_count()) throw InvalidInput("mask size does not match grid");
  return first_excluded_cell(domain, mask) == static_cast<std::size_t>(-1);
}

void require_dense(const GridDomain& domain, const Mask& mask, const std::string& context) {
  if (mask.size() != domain.node_count()) throw InvalidInput(context + ": mask size does not match grid");
  const auto cell = first_excluded_cell(domain, mask);
  if (cell == static_cast<std::size_t>(-1)) return;
  const auto idx = domain.unflatten(cell);
  std::string where;
  for (std::size_t a = 0; a < domain.dims(); ++a) where += (a ? "," : "") + std::to_string(idx[a]);
  throw NotDense(context + ": excluded node set contains the full grid cell at (" + where + ")");
}

Mask mask_and(const Mask& a, const Mask& b) {
  if (a.size() != b.size()) throw InvalidInput("masks have different sizes");
  Mask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

GridIntervalFunction::GridIntervalFunction(GridDomain domain, std::vector<ExtInterval> values, Mask mask)
    : domain_(std::move(domain)), values_(std::move(values)), mask_(std::move(mask)) {
  if (values_.size() != domain_.node_count()) throw InvalidInput("grid function needs one value per node");
  require_dense(domain_, mask_, "grid function mask");
}

GridIntervalFunction::GridIntervalFunction(GridDomain domain, std::vector<ExtInterval> values)
    : GridIntervalFunction(domain, std::move(values), full_mask(domain)) {}

GridIntervalFunction GridIntervalFunction::constant(const GridDomain& domain, const ExtInterval& value) {
  return GridIntervalFunction(domain, std::vector<ExtInterval>(domain.node_count(), value));
}

GridIntervalFunction GridIntervalFunction::sample(const GridDomain& domain,
                                                  const std::function<double(const Point&)>& fn, Mask mask) {
  std::vector<ExtInterval> values;
  values.reserve(domain.node_count());
  for (std::size_t i = 0; i < domain.node_count(); ++i) values.push_back(ExtInterval::point(fn(domain.node_point(i))));
  if (mask.empty()) mask = full_mask(domain);
  return GridIntervalFunction(domain, std::move(values), std::move(mask));
}

bool GridIntervalFunction::point_valued_on_mask() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (mask_[i] && !values_[i].degenerate()) return false;
  return true;
}

Mask GridIntervalFunction::degenerate_mask() const {
  Mask out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = mask_[i] && values_[i].degenerate();
  return out;
}

GridIntervalFunction GridIntervalFunction::lower_selection() const {
  std::vector<ExtInterval> v;
  v.reserve(size());
  for (const auto& x : values_) v.push_back(ExtInterval::point(x.lo()));
  return GridIntervalFunction(domain_, std::move(v), mask_);
}

GridIntervalFunction GridIntervalFunction::upper_selection() const {
  std::vector<ExtInterval> v;
  v.reserve(size());
  for (const auto& x : values_) v.push_back(ExtInterval::point(x.hi()));
  return GridIntervalFunction(domain_, std::move(v), mask_);
}

GridIntervalFunction GridIntervalFunction::with_mask(Mask mask) const {
  return GridIntervalFunction(domain_, values_, std::move(mask));
}

namespace {

void require_same_domain(const GridIntervalFunction& f, const GridIntervalFunction& g) {
  if (!(f.domain() == g.domain())) throw DomainMismatch("grid functions live on different grids");
}

bool endpoints_close(ExtReal a, ExtReal b, double tolerance) {
  if (a == b) return true;
  if (!a.is_finite() || !b.is_finite()) return false;
  return std::abs(a.value() - b.value()) <= tolerance;
}

// Combined witness mask for the nowhere-dense relations.
Mask combined_mask(const GridIntervalFunction& u, const GridIntervalFunction& v) {
  require_same_domain(u, v);
  Mask m = mask_and(u.mask(), v.mask());
  require_dense(u.domain(), m, "combined exclusion set");
  return m;
}

}  // namespace

bool same_values(const GridIntervalFunction& f, const GridIntervalFunction& g) {
  require_same_domain(f, g);
  return f.values() == g.values();
}

bool pointwise_leq(const GridIntervalFunction& f, const GridIntervalFunction& g) {
  require_same_domain(f, g);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!interval_leq(f[i], g[i])) return false;
  return true;
}

bool nd_equivalent(const GridIntervalFunction& u, const GridIntervalFunction& v, double tolerance) {
  const Mask m = combined_mask(u, v);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!m[i]) continue;
    if (!u[i].degenerate() || !v[i].degenerate())
      throw InvalidInput("nd_equivalent needs point values on the dense set (node " + std::to_string(i) + ")");
    if (!endpoints_close(u[i].lo(), v[i].lo(), tolerance)) return false;
  }
  return true;
}

bool nd_leq(const GridIntervalFunction& u, const GridIntervalFunction& v) {
  const Mask m = combined_mask(u, v);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (m[i] && !interval_leq(u[i], v[i])) return false;
  return true;
}

GridIntervalFunction restrict_to_mask(const GridIntervalFunction& f, const Mask& mask) {
  if (mask.size() != f.size()) throw InvalidInput("mask size does not match grid");
  return f.with_mask(mask_and(f.mask(), mask));
}

bool SkeletonFace::contains(const Point& x, double tolerance) const {
  if (std::abs(x[axis] - coordinate) > tolerance) return false;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (a == axis) continue;
    if (x[a] < lower[a] - tolerance || x[a] > upper[a] + tolerance) return false;
  }
  return true;
}

bool SkeletonSet::contains(const Point& x, double tolerance) const {
  return std::any_of(faces_.begin(), faces_.end(), [&](const SkeletonFace& f) { return f.contains(x, tolerance); });
}

Mask SkeletonSet::node_mask(const GridDomain& domain, double tolerance) const {
  Mask m(domain.node_count(), true);
  for (std::size_t i = 0; i < domain.node_count(); ++i) m[i] = !contains(domain.node_point(i), tolerance);
  return m;
}

}  // namespace ordcomp
