#pragma once

// Elementary functions, the searchable classes built from them, and the two
// representations of proper functions (exact 1D piecewise quadratics and
// black-box evaluators on a box).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phiconv/core.hpp"

namespace phiconv {

/// q2*|x|^2 + <q1, x> + q0 with an isotropic quadratic term. Unlike
/// Elementary the quadratic coefficient may have either sign.
struct Quadric {
  double q2 = 0.0;
  Point q1;
  double q0 = 0.0;

  Quadric() = default;
  Quadric(double q2_, Point q1_, double q0_) : q2(q2_), q1(q1_), q0(q0_) {}
  static Quadric zero(std::size_t dim) { return {0.0, Point::zeros(dim), 0.0}; }

  std::size_t dim() const { return q1.dim(); }
  double operator()(const Point& x) const { return q2 * x.squared_norm() + q1.dot(x) + q0; }

  friend Quadric operator+(const Quadric& a, const Quadric& b) { return {a.q2 + b.q2, a.q1 + b.q1, a.q0 + b.q0}; }
  friend Quadric operator-(const Quadric& a) { return {-a.q2, -a.q1, -a.q0}; }
  friend Quadric operator-(const Quadric& a, const Quadric& b) { return a + (-b); }
  friend Quadric operator*(double s, const Quadric& a) { return {s * a.q2, s * a.q1, s * a.q0}; }
};

/// phi(x) = -a|x|^2 + <v, x> + c with a >= 0.
class Elementary {
 public:
  Elementary(double a, Point v, double c = 0.0);
  static Elementary zero(std::size_t dim) { return {0.0, Point::zeros(dim), 0.0}; }
  static Elementary constant(std::size_t dim, double c) { return {0.0, Point::zeros(dim), c}; }

  double a() const { return a_; }
  const Point& v() const { return v_; }
  double c() const { return c_; }
  std::size_t dim() const { return v_.dim(); }

  double operator()(const Point& x) const { return -a_ * x.squared_norm() + v_.dot(x) + c_; }
  /// -phi, representable only when a == 0.
  std::optional<Elementary> negated() const;
  Elementary with_constant(double c) const { return {a_, v_, c}; }
  Quadric as_quadric() const { return {-a_, v_, c_}; }
  bool is_affine() const { return a_ == 0.0; }

  friend bool operator==(const Elementary& x, const Elementary& y) {
    return x.a_ == y.a_ && x.v_ == y.v_ && x.c_ == y.c_;
  }

 private:
  double a_;
  Point v_;
  double c_;
};

std::string to_string(const Elementary& phi);

/// t*phi1 + (1-t)*phi2 for t in [0,1]; stays in the class.
Elementary combine(double t, const Elementary& phi1, const Elementary& phi2);

enum class PhiKind { lsc_quadratic, affine, constant_only };

std::string to_string(PhiKind kind);
PhiKind phi_kind_from_string(const std::string& s);

struct PhiFlags {
  bool contains_zero = true;
  bool symmetric = false;
  bool additive = true;
  bool convex_set = true;
};

/// Truncated, gridded parameterization of a class of elementary functions.
/// Searches only ever see the canonical c = 0 members.
class PhiClass {
 public:
  PhiClass(PhiKind kind, std::size_t dim, double a_max = 8.0, double v_max = 32.0, int a_points = 65,
           int v_points = 65);

  PhiKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double a_max() const { return a_max_; }
  double v_max() const { return v_max_; }
  int a_points() const { return a_points_; }
  int v_points() const { return v_points_; }
  const PhiFlags& flags() const { return flags_; }

  /// Member of the (untruncated) class.
  bool contains(const Elementary& phi) const;
  /// Member of the class and inside the truncation box.
  bool in_bounds(const Elementary& phi) const;
  /// Throws unsupported-configuration for elementary functions outside the
  /// class, e.g. a nonzero quadratic term in a symmetric class.
  const Elementary& admit(const Elementary& phi) const;

  /// Number of free parameters: (a, v) for lsc, v for affine, none for constants.
  std::size_t parameter_dim() const;
  std::optional<BoxDomain> parameter_box() const;
  Elementary from_parameters(const Point& p) const;
  Point to_parameters(const Elementary& phi) const;

  PhiClass affine_subclass() const;
  PhiClass with_flags(PhiFlags flags) const;
  PhiClass with_bounds(double a_max, double v_max) const;
  PhiClass with_grid(int a_points, int v_points) const;

 private:
  PhiKind kind_;
  std::size_t dim_;
  double a_max_;
  double v_max_;
  int a_points_;
  int v_points_;
  PhiFlags flags_;
};

struct ClassExtremum {
  ExtendedValue value;
  std::optional<Elementary> best;
};

/// Grid scan over the parameter box, then the extra candidates, then local
/// refinement of the incumbent. Infinite incumbents carry no elementary.
ClassExtremum optimize_over_class(const PhiClass& phi, const std::function<ExtendedValue(const Elementary&)>& objective,
                                  Sense sense, int rounds, const std::vector<Elementary>& extras = {});

struct ScalarExtremum {
  ExtendedValue value;
  std::optional<double> arg;
};

/// sup of q2 x^2 + q1 x + q0 over [lo, hi]; either end may be infinite.
ScalarExtremum sup_quadratic_on_interval(double q2, double q1, double q0, double lo, double hi);
ScalarExtremum inf_quadratic_on_interval(double q2, double q1, double q0, double lo, double hi);

/// alpha x^2 + beta x + gamma on [lower, upper]. lower == upper is a single
/// point; infinite ends are allowed.
struct QuadraticPiece {
  double lower;
  double upper;
  double alpha;
  double beta;
  double gamma;

  double eval(double x) const { return (alpha * x + beta) * x + gamma; }
};

class PiecewiseQuadratic {
 public:
  explicit PiecewiseQuadratic(std::vector<QuadraticPiece> pieces);
  static PiecewiseQuadratic quadratic(double alpha, double beta, double gamma);
  static PiecewiseQuadratic indicator_interval(double lower, double upper);
  static PiecewiseQuadratic indicator_points(const std::vector<double>& points);

  const std::vector<QuadraticPiece>& pieces() const { return pieces_; }
  double domain_lower() const { return pieces_.front().lower; }
  double domain_upper() const { return pieces_.back().upper; }

  /// Minimum over the pieces containing x; +inf off the domain.
  ExtendedValue operator()(double x) const;
  /// sup_x (q2 x^2 + q1 x + q0 - f(x)), optionally restricted to [lo, hi].
  ScalarExtremum sup_of_quadratic_minus(double q2, double q1, double q0,
                                        double lo = -std::numeric_limits<double>::infinity(),
                                        double hi = std::numeric_limits<double>::infinity()) const;
  /// inf_x (f(x) + q2 x^2 + q1 x + q0).
  ScalarExtremum inf_plus_quadratic(double q2, double q1, double q0,
                                    double lo = -std::numeric_limits<double>::infinity(),
                                    double hi = std::numeric_limits<double>::infinity()) const;
  ScalarExtremum infimum() const { return inf_plus_quadratic(0.0, 0.0, 0.0); }

  /// Pointwise sum; throws invalid-argument when the domains do not meet.
  PiecewiseQuadratic plus(const PiecewiseQuadratic& other) const;
  PiecewiseQuadratic scaled(double lambda) const;

 private:
  std::vector<QuadraticPiece> pieces_;
};

/// f(x) - a x^2, same intervals.
PiecewiseQuadratic shift_by_quadratic(const PiecewiseQuadratic& f, double a);

using Evaluator = std::function<ExtendedValue(const Point&)>;

/// Black-box proper function. The box is where properness is checked and
/// where grid oracles search; the evaluator may be defined beyond it.
class TabulatedFunction {
 public:
  TabulatedFunction(BoxDomain box, Evaluator eval, std::string kind = "evaluator");

  /// Node values on the lattice of box (axis 0 slowest), linear in 1D and
  /// bilinear in 2D; +inf outside the box or next to a +inf node.
  static TabulatedFunction from_table(const BoxDomain& box, std::vector<double> values);
  /// max_i q_i(x), defined on the whole space.
  static TabulatedFunction quadric_max(const BoxDomain& box, std::vector<Quadric> quadrics);

  const BoxDomain& box() const { return box_; }
  const std::string& kind() const { return kind_; }
  ExtendedValue operator()(const Point& x) const;

 private:
  BoxDomain box_;
  Evaluator eval_;
  std::string kind_;
};

class ProperFunction {
 public:
  ProperFunction(PiecewiseQuadratic pw, std::string label = "");
  ProperFunction(TabulatedFunction tab, std::string label = "");

  std::size_t dim() const;
  const std::string& label() const { return label_; }
  ExtendedValue operator()(const Point& x) const;

  const PiecewiseQuadratic* piecewise() const { return std::get_if<PiecewiseQuadratic>(&rep_); }
  const TabulatedFunction* tabulated() const { return std::get_if<TabulatedFunction>(&rep_); }
  bool closed_form() const { return piecewise() != nullptr; }

  /// f - a|x|^2 (a >= 0).
  ProperFunction minus_quadratic(double a) const;
  /// lambda * f (lambda > 0).
  ProperFunction scaled(double lambda) const;

 private:
  std::variant<PiecewiseQuadratic, TabulatedFunction> rep_;
  std::string label_;
};

/// phi <= f on the box: exact per piece for piecewise quadratics, grid check
/// with slack 1e-9 otherwise.
bool support_membership(const Elementary& phi, const ProperFunction& f, const BoxDomain& box);

/// Whether f has a finite value somewhere in the box (exact for piecewise
/// quadratics, grid scan otherwise).
bool has_domain_in_box(const ProperFunction& f, const BoxDomain& box);

}  // namespace phiconv
