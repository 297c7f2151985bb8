#include "phiconv/functions.hpp"

#include <algorithm>
#include <cstdio>

namespace phiconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack for the exact piecewise support test; only absorbs rounding in the
// vertex formula.
constexpr double kExactSlack = 1e-12;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw_invalid(std::string(what) + " must be finite");
}

}  // namespace

Elementary::Elementary(double a, Point v, double c) : a_(a), v_(v), c_(c) {
  require_finite(a, "elementary coefficient a");
  require_finite(c, "elementary constant c");
  if (a < 0) throw_invalid("elementary coefficient a must be >= 0");
  if (v.dim() == 0) throw_invalid("elementary linear term needs a dimension");
}

std::optional<Elementary> Elementary::negated() const {
  if (a_ != 0.0) return std::nullopt;
  return Elementary(0.0, -v_, -c_);
}

std::string to_string(const Elementary& phi) {
  return "(a=" + ExtendedValue(phi.a()).to_string() + ", v=" + to_string(phi.v()) +
         ", c=" + ExtendedValue(phi.c()).to_string() + ")";
}

Elementary combine(double t, const Elementary& phi1, const Elementary& phi2) {
  if (!(t >= 0.0 && t <= 1.0)) throw_invalid("combine: t must lie in [0,1]");
  if (phi1.dim() != phi2.dim()) throw_invalid("combine: dimension mismatch");
  return {t * phi1.a() + (1 - t) * phi2.a(), t * phi1.v() + (1 - t) * phi2.v(), t * phi1.c() + (1 - t) * phi2.c()};
}

std::string to_string(PhiKind kind) {
  switch (kind) {
    case PhiKind::lsc_quadratic: return "lsc-quadratic";
    case PhiKind::affine: return "affine";
    case PhiKind::constant_only: return "constant-only";
  }
  return "?";
}

PhiKind phi_kind_from_string(const std::string& s) {
  if (s == "lsc-quadratic" || s == "lsc") return PhiKind::lsc_quadratic;
  if (s == "affine") return PhiKind::affine;
  if (s == "constant-only" || s == "constant") return PhiKind::constant_only;
  throw_invalid("unknown phi kind '" + s + "'");
}

PhiClass::PhiClass(PhiKind kind, std::size_t dim, double a_max, double v_max, int a_points, int v_points)
    : kind_(kind), dim_(dim), a_max_(a_max), v_max_(v_max), a_points_(a_points), v_points_(v_points) {
  if (dim == 0 || dim > kMaxDim - 1) throw_invalid("phi class dimension must be 1..3");
  if (!(a_max > 0) || !std::isfinite(a_max)) throw_invalid("A_MAX must be positive");
  if (!(v_max > 0) || !std::isfinite(v_max)) throw_invalid("V_MAX must be positive");
  if (a_points < 2 || v_points < 2) throw_invalid("phi grids need at least 2 points per axis");
  flags_.symmetric = kind != PhiKind::lsc_quadratic;
}

bool PhiClass::contains(const Elementary& phi) const {
  if (phi.dim() != dim_) return false;
  switch (kind_) {
    case PhiKind::lsc_quadratic: return true;
    case PhiKind::affine: return phi.a() == 0.0;
    case PhiKind::constant_only: return phi.a() == 0.0 && phi.v() == Point::zeros(dim_);
  }
  return false;
}

bool PhiClass::in_bounds(const Elementary& phi) const {
  if (!contains(phi)) return false;
  if (phi.a() > a_max_) return false;
  for (std::size_t k = 0; k < dim_; ++k)
    if (std::abs(phi.v()[k]) > v_max_) return false;
  return true;
}

const Elementary& PhiClass::admit(const Elementary& phi) const {
  if (phi.dim() != dim_) throw_invalid("elementary function has the wrong dimension for this class");
  if (!contains(phi))
    throw_unsupported("elementary function " + to_string(phi) + " is not a member of the " + to_string(kind_) +
                      " class");
  return phi;
}

std::size_t PhiClass::parameter_dim() const {
  switch (kind_) {
    case PhiKind::lsc_quadratic: return 1 + dim_;
    case PhiKind::affine: return dim_;
    case PhiKind::constant_only: return 0;
  }
  return 0;
}

std::optional<BoxDomain> PhiClass::parameter_box() const {
  const std::size_t pd = parameter_dim();
  if (pd == 0) return std::nullopt;
  Point lo = Point::zeros(pd), hi = Point::zeros(pd);
  std::vector<int> counts;
  std::size_t k = 0;
  if (kind_ == PhiKind::lsc_quadratic) {
    lo[0] = 0.0;
    hi[0] = a_max_;
    counts.push_back(a_points_);
    k = 1;
  }
  for (; k < pd; ++k) {
    lo[k] = -v_max_;
    hi[k] = v_max_;
    counts.push_back(v_points_);
  }
  return BoxDomain(lo, hi, counts);
}

Elementary PhiClass::from_parameters(const Point& p) const {
  if (p.dim() != parameter_dim() && !(parameter_dim() == 0)) throw_invalid("parameter vector has the wrong size");
  Point v = Point::zeros(dim_);
  switch (kind_) {
    case PhiKind::lsc_quadratic:
      for (std::size_t k = 0; k < dim_; ++k) v[k] = p[k + 1];
      return {std::max(0.0, p[0]), v, 0.0};
    case PhiKind::affine:
      for (std::size_t k = 0; k < dim_; ++k) v[k] = p[k];
      return {0.0, v, 0.0};
    case PhiKind::constant_only: return Elementary::zero(dim_);
  }
  return Elementary::zero(dim_);
}

Point PhiClass::to_parameters(const Elementary& phi) const {
  admit(phi);
  const std::size_t pd = parameter_dim();
  if (pd == 0) throw_invalid("constant-only class has no parameters");
  Point p = Point::zeros(pd);
  if (kind_ == PhiKind::lsc_quadratic) {
    p[0] = phi.a();
    for (std::size_t k = 0; k < dim_; ++k) p[k + 1] = phi.v()[k];
  } else {
    for (std::size_t k = 0; k < dim_; ++k) p[k] = phi.v()[k];
  }
  return p;
}

PhiClass PhiClass::affine_subclass() const {
  if (kind_ != PhiKind::lsc_quadratic) return *this;
  PhiClass sub(PhiKind::affine, dim_, a_max_, v_max_, a_points_, v_points_);
  PhiFlags fl = flags_;
  fl.symmetric = true;
  sub.flags_ = fl;
  return sub;
}

PhiClass PhiClass::with_flags(PhiFlags flags) const {
  PhiClass c = *this;
  c.flags_ = flags;
  return c;
}

PhiClass PhiClass::with_bounds(double a_max, double v_max) const {
  PhiClass c(kind_, dim_, a_max, v_max, a_points_, v_points_);
  c.flags_ = flags_;
  return c;
}

PhiClass PhiClass::with_grid(int a_points, int v_points) const {
  PhiClass c(kind_, dim_, a_max_, v_max_, a_points, v_points);
  c.flags_ = flags_;
  return c;
}

ClassExtremum optimize_over_class(const PhiClass& phi, const std::function<ExtendedValue(const Elementary&)>& objective,
                                  Sense sense, int rounds, const std::vector<Elementary>& extras) {
  const auto pbox = phi.parameter_box();
  auto h = [&](const Point& p) { return objective(phi.from_parameters(p)); };

  ClassExtremum best{sense == Sense::maximize ? ExtendedValue::neg_inf() : ExtendedValue::pos_inf(), std::nullopt};
  if (pbox) {
    Grid grid(*pbox);
    Extremum e = sense == Sense::maximize ? sup_on_grid(h, grid) : inf_on_grid(h, grid);
    best.value = e.value;
    if (e.point) best.best = phi.from_parameters(*e.point);
  } else {
    Elementary z = Elementary::zero(phi.dim());
    best = {objective(z), z};
  }

  for (const Elementary& x : extras) {
    if (!phi.contains(x)) continue;
    ExtendedValue v = objective(x);
    if (detail::improves(sense, v, best.value)) best = {v, x};
  }

  if (pbox && rounds > 0 && best.value.is_finite() && best.best && best.best->c() == 0.0 && phi.in_bounds(*best.best)) {
    Extremum r = refine_extremum(h, *pbox, phi.to_parameters(*best.best), rounds, sense);
    if (r.point && detail::improves(sense, r.value, best.value)) best = {r.value, phi.from_parameters(*r.point)};
  }
  if (!best.value.is_finite()) best.best.reset();
  return best;
}

ScalarExtremum sup_quadratic_on_interval(double q2, double q1, double q0, double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw_invalid("sup_quadratic_on_interval: bad interval");
  const bool up_open = hi == kInf, down_open = lo == -kInf;
  if (up_open && (q2 > 0 || (q2 == 0 && q1 > 0))) return {ExtendedValue::pos_inf(), std::nullopt};
  if (down_open && (q2 > 0 || (q2 == 0 && q1 < 0))) return {ExtendedValue::pos_inf(), std::nullopt};
  auto val = [&](double x) { return q2 * x * x + q1 * x + q0; };

  if (q2 < 0) {
    const double xv = -q1 / (2 * q2);
    if (xv >= lo && xv <= hi) return {q0 - q1 * q1 / (4 * q2), xv};
    const double xc = std::clamp(xv, lo, hi);
    return {val(xc), xc};
  }
  if (q2 == 0) {
    if (q1 == 0) {
      const double x = std::clamp(0.0, lo, hi);
      return {q0, x};
    }
    const double x = q1 > 0 ? hi : lo;
    return {val(x), x};
  }
  // Convex with both ends finite: the max sits at an endpoint.
  const double vl = val(lo), vh = val(hi);
  return vh > vl ? ScalarExtremum{vh, hi} : ScalarExtremum{vl, lo};
}

ScalarExtremum inf_quadratic_on_interval(double q2, double q1, double q0, double lo, double hi) {
  ScalarExtremum s = sup_quadratic_on_interval(-q2, -q1, -q0, lo, hi);
  return {-s.value, s.arg};
}

PiecewiseQuadratic::PiecewiseQuadratic(std::vector<QuadraticPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw_invalid("piecewise quadratic needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (std::isnan(p.lower) || std::isnan(p.upper) || p.lower > p.upper || p.lower == kInf || p.upper == -kInf)
      throw_invalid("piecewise quadratic: piece " + std::to_string(i) + " has an invalid interval");
    require_finite(p.alpha, "piece coefficient");
    require_finite(p.beta, "piece coefficient");
    require_finite(p.gamma, "piece coefficient");
    if (i > 0 && pieces_[i - 1].upper > p.lower)
      throw_invalid("piecewise quadratic: pieces must be sorted and may overlap only at endpoints");
  }
}

PiecewiseQuadratic PiecewiseQuadratic::quadratic(double alpha, double beta, double gamma) {
  return PiecewiseQuadratic({{-kInf, kInf, alpha, beta, gamma}});
}

PiecewiseQuadratic PiecewiseQuadratic::indicator_interval(double lower, double upper) {
  return PiecewiseQuadratic({{lower, upper, 0, 0, 0}});
}

PiecewiseQuadratic PiecewiseQuadratic::indicator_points(const std::vector<double>& points) {
  std::vector<double> p = points;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  std::vector<QuadraticPiece> pieces;
  for (double x : p) {
    require_finite(x, "indicator point");
    pieces.push_back({x, x, 0, 0, 0});
  }
  return PiecewiseQuadratic(std::move(pieces));
}

ExtendedValue PiecewiseQuadratic::operator()(double x) const {
  ExtendedValue best = ExtendedValue::pos_inf();
  for (const auto& p : pieces_) {
    if (p.lower > x) break;
    if (x <= p.upper) best = std::min(best, ExtendedValue(p.eval(x)));
  }
  return best;
}

ScalarExtremum PiecewiseQuadratic::sup_of_quadratic_minus(double q2, double q1, double q0, double lo,
                                                          double hi) const {
  ScalarExtremum best{ExtendedValue::neg_inf(), std::nullopt};
  for (const auto& p : pieces_) {
    const double l = std::max(p.lower, lo), u = std::min(p.upper, hi);
    if (l > u) continue;
    ScalarExtremum s = sup_quadratic_on_interval(q2 - p.alpha, q1 - p.beta, q0 - p.gamma, l, u);
    if (s.value > best.value) best = s;
    if (best.value.is_pos_inf()) break;
  }
  return best;
}

ScalarExtremum PiecewiseQuadratic::inf_plus_quadratic(double q2, double q1, double q0, double lo, double hi) const {
  ScalarExtremum s = sup_of_quadratic_minus(-q2, -q1, -q0, lo, hi);
  return {-s.value, s.arg};
}

PiecewiseQuadratic PiecewiseQuadratic::plus(const PiecewiseQuadratic& other) const {
  std::vector<QuadraticPiece> out;
  for (const auto& a : pieces_) {
    for (const auto& b : other.pieces_) {
      const double l = std::max(a.lower, b.lower), u = std::min(a.upper, b.upper);
      if (l > u) continue;
      out.push_back({l, u, a.alpha + b.alpha, a.beta + b.beta, a.gamma + b.gamma});
    }
  }
  if (out.empty()) throw_invalid("sum of piecewise quadratics has an empty domain");
  std::stable_sort(out.begin(), out.end(), [](const QuadraticPiece& x, const QuadraticPiece& y) {
    return x.lower < y.lower || (x.lower == y.lower && x.upper < y.upper);
  });
  return PiecewiseQuadratic(std::move(out));
}

PiecewiseQuadratic PiecewiseQuadratic::scaled(double lambda) const {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw_invalid("scale factor must be positive");
  std::vector<QuadraticPiece> out = pieces_;
  for (auto& p : out) {
    p.alpha *= lambda;
    p.beta *= lambda;
    p.gamma *= lambda;
  }
  return PiecewiseQuadratic(std::move(out));
}

PiecewiseQuadratic shift_by_quadratic(const PiecewiseQuadratic& f, double a) {
  if (!(a >= 0) || !std::isfinite(a)) throw_invalid("shift_by_quadratic: a must be >= 0");
  std::vector<QuadraticPiece> out = f.pieces();
  for (auto& p : out) p.alpha -= a;
  return PiecewiseQuadratic(std::move(out));
}

TabulatedFunction::TabulatedFunction(BoxDomain box, Evaluator eval, std::string kind)
    : box_(std::move(box)), eval_(std::move(eval)), kind_(std::move(kind)) {
  if (!eval_) throw_invalid("tabulated function needs an evaluator");
  Grid grid(box_);
  bool finite_somewhere = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ExtendedValue v = (*this)(grid.point(i));
    if (v.is_finite()) finite_somewhere = true;
  }
  if (!finite_somewhere) throw_invalid("tabulated function has an empty effective domain on its box");
}

ExtendedValue TabulatedFunction::operator()(const Point& x) const {
  ExtendedValue v = eval_(x);
  if (v.is_neg_inf()) throw Error(ErrorCode::domain_error, "proper function evaluated to -inf");
  return v;
}

TabulatedFunction TabulatedFunction::from_table(const BoxDomain& box, std::vector<double> values) {
  const std::size_t d = box.dim();
  if (d > 2) throw_invalid("tables are supported in dimensions 1 and 2");
  if (values.size() != Grid(box).size()) throw_invalid("table size does not match the box lattice");
  for (double v : values)
    if (std::isnan(v) || v == -kInf) throw_invalid("table values must be finite or +inf");
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  Evaluator eval = [box, table](const Point& x) -> ExtendedValue {
    if (x.dim() != box.dim() || !box.contains(x)) return ExtendedValue::pos_inf();
    std::array<int, 2> idx{};
    std::array<double, 2> frac{};
    for (std::size_t k = 0; k < box.dim(); ++k) {
      const int n = box.count(k);
      const double s = (x[k] - box.lower()[k]) / (box.upper()[k] - box.lower()[k]) * (n - 1);
      int i = std::min(static_cast<int>(std::floor(s)), n - 2);
      i = std::max(i, 0);
      idx[k] = i;
      frac[k] = std::clamp(s - i, 0.0, 1.0);
    }
    const auto& t = *table;
    double acc = 0.0;
    if (box.dim() == 1) {
      const double w[2] = {1 - frac[0], frac[0]};
      for (int a = 0; a < 2; ++a) {
        if (w[a] == 0) continue;
        const double v = t[idx[0] + a];
        if (v == kInf) return ExtendedValue::pos_inf();
        acc += w[a] * v;
      }
      return acc;
    }
    const int n1 = box.count(1);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double w = (a ? frac[0] : 1 - frac[0]) * (b ? frac[1] : 1 - frac[1]);
        if (w == 0) continue;
        const double v = t[static_cast<std::size_t>(idx[0] + a) * n1 + idx[1] + b];
        if (v == kInf) return ExtendedValue::pos_inf();
        acc += w * v;
      }
    }
    return acc;
  };
  return {box, std::move(eval), "table"};
}

TabulatedFunction TabulatedFunction::quadric_max(const BoxDomain& box, std::vector<Quadric> quadrics) {
  if (quadrics.empty()) throw_invalid("quadric-max needs at least one quadric");
  for (const auto& q : quadrics) {
    if (q.dim() != box.dim()) throw_invalid("quadric dimension does not match the box");
    require_finite(q.q2, "quadric coefficient");
    require_finite(q.q0, "quadric coefficient");
  }
  auto qs = std::make_shared<const std::vector<Quadric>>(std::move(quadrics));
  Evaluator eval = [qs](const Point& x) -> ExtendedValue {
    double m = -kInf;
    for (const auto& q : *qs) m = std::max(m, q(x));
    return m;
  };
  return {box, std::move(eval), "quadric-max"};
}

ProperFunction::ProperFunction(PiecewiseQuadratic pw, std::string label) : rep_(std::move(pw)), label_(std::move(label)) {}

ProperFunction::ProperFunction(TabulatedFunction tab, std::string label)
    : rep_(std::move(tab)), label_(std::move(label)) {}

std::size_t ProperFunction::dim() const {
  if (const auto* t = tabulated()) return t->box().dim();
  return 1;
}

ExtendedValue ProperFunction::operator()(const Point& x) const {
  if (x.dim() != dim())
    throw_invalid("evaluate: point of dimension " + std::to_string(x.dim()) + " for a function of dimension " +
                  std::to_string(dim()));
  if (const auto* p = piecewise()) return (*p)(x[0]);
  return (*tabulated())(x);
}

ProperFunction ProperFunction::minus_quadratic(double a) const {
  if (!(a >= 0) || !std::isfinite(a)) throw_invalid("minus_quadratic: a must be >= 0");
  if (const auto* p = piecewise()) return {shift_by_quadratic(*p, a), label_};
  const TabulatedFunction t = *tabulated();
  Evaluator e = [t, a](const Point& x) -> ExtendedValue {
    ExtendedValue v = t(x);
    if (!v.is_finite()) return v;
    return v.value() - a * x.squared_norm();
  };
  return {TabulatedFunction(t.box(), std::move(e), t.kind()), label_};
}

ProperFunction ProperFunction::scaled(double lambda) const {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw_invalid("scale factor must be positive");
  if (const auto* p = piecewise()) return {p->scaled(lambda), label_};
  const TabulatedFunction t = *tabulated();
  Evaluator e = [t, lambda](const Point& x) -> ExtendedValue {
    ExtendedValue v = t(x);
    if (!v.is_finite()) return v;
    return lambda * v.value();
  };
  return {TabulatedFunction(t.box(), std::move(e), t.kind()), label_};
}

bool support_membership(const Elementary& phi, const ProperFunction& f, const BoxDomain& box) {
  if (phi.dim() != f.dim() || box.dim() != f.dim()) throw_invalid("support_membership: dimension mismatch");
  if (const auto* p = f.piecewise()) {
    ScalarExtremum s = p->sup_of_quadratic_minus(-phi.a(), phi.v()[0], phi.c(), box.lower()[0], box.upper()[0]);
    return s.value <= ExtendedValue(kExactSlack);
  }
  Grid grid(box);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    const ExtendedValue fx = f(x);
    if (fx.is_pos_inf()) continue;
    if (phi(x) > fx.value() + 1e-9) return false;
  }
  return true;
}

bool has_domain_in_box(const ProperFunction& f, const BoxDomain& box) {
  if (box.dim() != f.dim()) throw_invalid("box dimension does not match the function");
  if (const auto* p = f.piecewise()) {
    for (const auto& piece : p->pieces())
      if (std::max(piece.lower, box.lower()[0]) <= std::min(piece.upper, box.upper()[0])) return true;
    return false;
  }
  Grid grid(box);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (f(grid.point(i)).is_finite()) return true;
  return false;
}

}  // namespace phiconv
