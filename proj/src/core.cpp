#include "phiconv/core.hpp"

#include <algorithm>
#include <cstdio>

namespace phiconv {

std::string ExtendedValue::to_string() const {
  if (is_pos_inf()) return "+inf";
  if (is_neg_inf()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v_ == 0.0 ? 0.0 : v_);
  return buf;
}

Point::Point(std::initializer_list<double> coords) : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords) {
  if (coords.empty() || coords.size() > kMaxDim) throw_invalid("point dimension must be in 1..4");
  dim_ = coords.size();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!std::isfinite(coords[i])) throw_invalid("point coordinates must be finite");
    c_[i] = coords[i];
  }
}

Point Point::zeros(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) throw_invalid("point dimension must be in 1..4");
  Point p;
  p.dim_ = dim;
  return p;
}

double Point::dot(const Point& o) const {
  if (o.dim_ != dim_) throw_invalid("dimension mismatch in dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
  return s;
}

Point operator+(const Point& a, const Point& b) {
  if (a.dim_ != b.dim_) throw_invalid("dimension mismatch in point sum");
  Point r = a;
  for (std::size_t i = 0; i < a.dim_; ++i) r.c_[i] += b.c_[i];
  return r;
}

Point operator-(const Point& a, const Point& b) { return a + (-b); }

Point operator-(const Point& a) {
  Point r = a;
  for (std::size_t i = 0; i < a.dim_; ++i) r.c_[i] = -r.c_[i];
  return r;
}

Point operator*(double s, const Point& a) {
  Point r = a;
  for (std::size_t i = 0; i < a.dim_; ++i) r.c_[i] *= s;
  return r;
}

bool operator==(const Point& a, const Point& b) {
  return a.dim_ == b.dim_ && std::equal(a.c_.begin(), a.c_.begin() + a.dim_, b.c_.begin());
}

std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ", ";
    s += ExtendedValue(p[i]).to_string();
  }
  return s + ")";
}

BoxDomain::BoxDomain(Point lower, Point upper, std::vector<int> counts)
    : lower_(lower), upper_(upper), counts_(std::move(counts)) {
  if (lower_.dim() == 0 || lower_.dim() != upper_.dim() || counts_.size() != lower_.dim())
    throw_invalid("box: inconsistent dimensions");
  for (std::size_t k = 0; k < lower_.dim(); ++k) {
    if (!(lower_[k] < upper_[k])) throw_invalid("box: lower must be < upper on every axis");
    if (counts_[k] < 2) throw_invalid("box: at least 2 samples per axis");
  }
}

BoxDomain BoxDomain::uniform(Point lower, Point upper, int count) {
  const std::size_t d = lower.dim();
  return {lower, upper, std::vector<int>(d, count)};
}

bool BoxDomain::contains(const Point& p) const {
  if (p.dim() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (p[k] < lower_[k] || p[k] > upper_[k]) return false;
  return true;
}

Point BoxDomain::clamp(const Point& p) const {
  Point q = p;
  for (std::size_t k = 0; k < dim(); ++k) q[k] = std::clamp(q[k], lower_[k], upper_[k]);
  return q;
}

BoxDomain BoxDomain::scaled(double factor) const {
  if (!(factor > 0)) throw_invalid("box: scale factor must be positive");
  Point lo = lower_, hi = upper_;
  for (std::size_t k = 0; k < dim(); ++k) {
    const double mid = 0.5 * (lower_[k] + upper_[k]);
    const double half = 0.5 * (upper_[k] - lower_[k]) * factor;
    lo[k] = mid - half;
    hi[k] = mid + half;
  }
  return {lo, hi, counts_};
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int c : box_.counts()) n *= static_cast<std::size_t>(c);
  return n;
}

double Grid::coordinate(std::size_t axis, int i) const {
  const int n = box_.count(axis);
  if (i == n - 1) return box_.upper()[axis];
  const double lo = box_.lower()[axis], hi = box_.upper()[axis];
  // Multiply before dividing so that integer-valued nodes stay exact.
  return lo + (hi - lo) * i / (n - 1);
}

Point Grid::point(std::size_t index) const {
  const std::size_t d = dim();
  Point p = Point::zeros(d);
  for (std::size_t k = d; k-- > 0;) {
    const auto n = static_cast<std::size_t>(box_.count(k));
    p[k] = coordinate(k, static_cast<int>(index % n));
    index /= n;
  }
  return p;
}

}  // namespace phiconv
