#pragma once

// Extended reals, points, box domains and the grid/refinement machinery that
// stands in for every "sup over x" and "inf over x" in the toolkit.

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phiconv/error.hpp"

namespace phiconv {

/// Element of [-inf, +inf]. Stored as an IEEE double; NaN is rejected at
/// construction so every value is totally ordered.
class ExtendedValue {
 public:
  constexpr ExtendedValue() = default;
  ExtendedValue(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw Error(ErrorCode::domain_error, "extended value cannot be NaN");
  }

  static constexpr ExtendedValue pos_inf() { return ExtendedValue(Raw{std::numeric_limits<double>::infinity()}); }
  static constexpr ExtendedValue neg_inf() { return ExtendedValue(Raw{-std::numeric_limits<double>::infinity()}); }

  constexpr bool is_finite() const { return v_ > -kInf && v_ < kInf; }
  constexpr bool is_pos_inf() const { return v_ == kInf; }
  constexpr bool is_neg_inf() const { return v_ == -kInf; }

  /// Finite payload; throws on an infinite value.
  double value() const {
    if (!is_finite()) throw Error(ErrorCode::domain_error, "extended value is not finite");
    return v_;
  }
  /// Infinities map to IEEE infinities.
  constexpr double to_double() const { return v_; }

  friend ExtendedValue operator+(ExtendedValue a, ExtendedValue b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      throw Error(ErrorCode::domain_error, "undefined sum +inf + -inf");
    return ExtendedValue(Raw{a.v_ + b.v_});
  }
  friend ExtendedValue operator-(ExtendedValue a) { return ExtendedValue(Raw{-a.v_}); }
  friend ExtendedValue operator-(ExtendedValue a, ExtendedValue b) { return a + (-b); }
  ExtendedValue& operator+=(ExtendedValue o) { return *this = *this + o; }

  friend constexpr bool operator==(ExtendedValue a, ExtendedValue b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(ExtendedValue a, ExtendedValue b) {
    // Total order: NaN is impossible, so the partial order is total.
    return a.v_ < b.v_ ? std::weak_ordering::less
                       : (a.v_ > b.v_ ? std::weak_ordering::greater : std::weak_ordering::equivalent);
  }

  /// "+inf", "-inf" or %.12g.
  std::string to_string() const;

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  struct Raw {
    double v;
  };
  constexpr explicit ExtendedValue(Raw r) : v_(r.v) {}
  double v_ = 0.0;
};

inline constexpr std::size_t kMaxDim = 4;

/// Finite coordinate vector of dimension 1..kMaxDim. Problem instances only
/// use dimensions 1 and 2; parameter searches reuse the type for up to four
/// coordinates.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);
  static Point zeros(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> coords() const { return {c_.data(), dim_}; }

  double dot(const Point& o) const;
  double squared_norm() const { return dot(*this); }

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator-(const Point& a);
  friend Point operator*(double s, const Point& a);
  friend bool operator==(const Point& a, const Point& b);

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

std::string to_string(const Point& p);

/// Axis-aligned box with a sample count per axis.
class BoxDomain {
 public:
  BoxDomain(Point lower, Point upper, std::vector<int> counts);
  static BoxDomain uniform(Point lower, Point upper, int count);

  std::size_t dim() const { return lower_.dim(); }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  int count(std::size_t axis) const { return counts_[axis]; }
  const std::vector<int>& counts() const { return counts_; }
  double cell(std::size_t axis) const { return (upper_[axis] - lower_[axis]) / (counts_[axis] - 1); }

  bool contains(const Point& p) const;
  Point clamp(const Point& p) const;
  /// Box with the same center and counts, half-widths multiplied by factor.
  BoxDomain scaled(double factor) const;
  BoxDomain with_counts(std::vector<int> counts) const { return {lower_, upper_, std::move(counts)}; }

 private:
  Point lower_;
  Point upper_;
  std::vector<int> counts_;
};

/// Lattice of a BoxDomain; enumeration is lexicographic with axis 0 slowest.
class Grid {
 public:
  explicit Grid(const BoxDomain& box) : box_(box) {}

  std::size_t size() const;
  std::size_t dim() const { return box_.dim(); }
  double coordinate(std::size_t axis, int i) const;
  Point point(std::size_t index) const;
  const BoxDomain& box() const { return box_; }

 private:
  BoxDomain box_;
};

enum class Sense { maximize, minimize };

struct Extremum {
  ExtendedValue value;
  std::optional<Point> point;
};

struct SentinelConfig {
  double bound = 1e12;
  double expansion = 10.0;
  int expansions = 2;
  double growth_floor = 1e-6;
};

/// Numerical knobs shared by the searching modules.
struct SearchConfig {
  int refine_rounds = 20;
  SentinelConfig sentinel{};
  double equality_tol = 1e-6;
  double inequality_tol = 1e-9;
  double agreement_tol = 1e-4;
  int support_points = 9;
  std::size_t pair_budget = 100000;
  std::size_t kkt_budget = 20000;
};

namespace detail {

inline bool improves(Sense s, ExtendedValue candidate, ExtendedValue incumbent) {
  return s == Sense::maximize ? candidate > incumbent : candidate < incumbent;
}

}  // namespace detail

/// Maximum of h over the grid, first attaining point in enumeration order.
template <class F>
Extremum sup_on_grid(F&& h, const Grid& grid) {
  Extremum best{ExtendedValue::neg_inf(), std::nullopt};
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point p = grid.point(i);
    ExtendedValue v = h(p);
    if (!best.point || v > best.value) {
      best = {v, p};
      if (v.is_pos_inf()) break;
    }
  }
  return best;
}

/// Minimum of h over the grid. +inf samples are skipped; if every sample is
/// +inf the result is +inf with no point.
template <class F>
Extremum inf_on_grid(F&& h, const Grid& grid) {
  Extremum best{ExtendedValue::pos_inf(), std::nullopt};
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point p = grid.point(i);
    ExtendedValue v = h(p);
    if (v.is_pos_inf()) continue;
    if (!best.point || v < best.value) {
      best = {v, p};
      if (v.is_neg_inf()) break;
    }
  }
  return best;
}

/// Local pattern refinement around seed. Each round halves the step and
/// scans a 5-point stencil per axis (clamped to the box); only strict
/// improvements move the incumbent, so the result is monotone in rounds.
template <class F>
Extremum refine_extremum(F&& h, const BoxDomain& box, const Point& seed, int rounds, Sense sense) {
  if (rounds < 0) throw_invalid("refine_extremum: rounds must be >= 0");
  if (seed.dim() != box.dim() || !box.contains(seed)) throw_invalid("refine_extremum: seed outside box");
  Extremum best{h(seed), seed};
  const ExtendedValue terminal = sense == Sense::maximize ? ExtendedValue::pos_inf() : ExtendedValue::neg_inf();
  const std::size_t dim = box.dim();
  Point step = Point::zeros(dim);
  for (std::size_t k = 0; k < dim; ++k) step[k] = box.cell(k);

  std::size_t stencil = 1;
  for (std::size_t k = 0; k < dim; ++k) stencil *= 5;

  for (int r = 0; r < rounds && best.value != terminal; ++r) {
    step = 0.5 * step;
    const Point center = *best.point;
    Extremum round_best = best;
    for (std::size_t s = 0; s < stencil; ++s) {
      Point q = center;
      std::size_t code = s;
      bool is_center = true;
      for (std::size_t k = 0; k < dim; ++k) {
        const int j = static_cast<int>(code % 5) - 2;
        code /= 5;
        if (j != 0) is_center = false;
        q[k] = center[k] + j * step[k];
      }
      if (is_center) continue;
      q = box.clamp(q);
      ExtendedValue v = h(q);
      if (detail::improves(sense, v, round_best.value)) round_best = {v, q};
    }
    best = round_best;
  }
  return best;
}

/// Grid scan followed by refinement of the best grid point.
template <class F>
Extremum optimize_on_box(F&& h, const BoxDomain& box, Sense sense, int rounds) {
  Grid grid(box);
  Extremum e = sense == Sense::maximize ? sup_on_grid(h, grid) : inf_on_grid(h, grid);
  if (!e.point || !e.value.is_finite()) return e;
  return refine_extremum(h, box, *e.point, rounds, sense);
}

/// Supremum over the box with the unboundedness sentinel: the box is
/// expanded `expansions` times by `expansion`; the sup is reported +inf when
/// a refined value exceeds `bound`, or when the last increment is not
/// smaller than the previous one (non-decaying growth).
template <class F>
Extremum sup_with_sentinel(F&& h, const BoxDomain& box, int rounds, const SentinelConfig& cfg) {
  Extremum s = optimize_on_box(h, box, Sense::maximize, rounds);
  auto blown = [&](const Extremum& e) { return e.value.is_pos_inf() || e.value > ExtendedValue(cfg.bound); };
  if (blown(s)) return {ExtendedValue::pos_inf(), std::nullopt};
  if (cfg.expansions <= 0) return s;
  std::vector<double> seq;
  if (s.value.is_finite()) seq.push_back(s.value.to_double());
  double scale = 1.0;
  for (int k = 1; k <= cfg.expansions; ++k) {
    scale *= cfg.expansion;
    Extremum e = optimize_on_box(h, box.scaled(scale), Sense::maximize, rounds);
    if (e.point && e.value > s.value) s = e;
    if (blown(s)) return {ExtendedValue::pos_inf(), std::nullopt};
    if (s.value.is_finite()) seq.push_back(s.value.to_double());
  }
  if (seq.size() >= 3) {
    const std::size_t n = seq.size();
    const double d_prev = seq[n - 2] - seq[n - 3];
    const double d_last = seq[n - 1] - seq[n - 2];
    if (d_last > cfg.growth_floor * (1.0 + std::abs(seq[n - 1])) && d_last >= d_prev)
      return {ExtendedValue::pos_inf(), std::nullopt};
  }
  return s;
}

/// Mirror of sup_with_sentinel for infima (-inf detection).
template <class F>
Extremum inf_with_sentinel(F&& h, const BoxDomain& box, int rounds, const SentinelConfig& cfg) {
  auto neg = [&](const Point& x) { return -ExtendedValue(h(x)); };
  Extremum e = sup_with_sentinel(neg, box, rounds, cfg);
  if (e.value.is_neg_inf()) return {ExtendedValue::pos_inf(), std::nullopt};
  return {-e.value, e.point};
}

}  // namespace phiconv
