#include "doctest.h"
#include "phiconv/functions.hpp"

using namespace phiconv;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
BoxDomain box1(double lo = -10, double hi = 10, int n = 2001) { return BoxDomain::uniform(Point{lo}, Point{hi}, n); }
PiecewiseQuadratic kkt_f() { return PiecewiseQuadratic({{-kInf, 0.0, 2.0, 4.0, 2.0}, {0.0, kInf, 2.0, -4.0, 2.0}}); }
}  // namespace

TEST_CASE("elementary functions") {
  Elementary phi(1.0, Point{2.0}, 3.0);
  CHECK(phi(Point{1.0}) == 4.0);
  CHECK_THROWS_AS(Elementary(-1.0, Point{0.0}), Error);
  CHECK(!phi.negated());
  CHECK(Elementary(0.0, Point{2.0}, 1.0).negated()->v()[0] == -2.0);
  const Elementary m = combine(0.25, Elementary(1.0, Point{0.0}), Elementary(3.0, Point{4.0}, 1.0));
  CHECK(m.a() == 2.5);
  CHECK(m.v()[0] == 3.0);
  CHECK(m.c() == 0.75);
}

TEST_CASE("classes") {
  PhiClass lsc(PhiKind::lsc_quadratic, 1);
  CHECK(!lsc.flags().symmetric);
  CHECK(lsc.flags().additive);
  CHECK(lsc.contains(Elementary(3.0, Point{1.0})));
  CHECK(lsc.in_bounds(Elementary(8.0, Point{32.0})));
  CHECK(!lsc.in_bounds(Elementary(8.5, Point{0.0})));
  PhiClass aff(PhiKind::affine, 1);
  CHECK(aff.flags().symmetric);
  CHECK_THROWS_AS(aff.admit(Elementary(1.0, Point{0.0})), Error);
  try {
    aff.admit(Elementary(1.0, Point{0.0}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_configuration);
  }
  CHECK(lsc.parameter_dim() == 2);
  CHECK(aff.parameter_dim() == 1);
  CHECK(PhiClass(PhiKind::constant_only, 1).parameter_dim() == 0);
  const Elementary e = lsc.from_parameters(Point{2.0, -1.0});
  CHECK(e.a() == 2.0);
  CHECK(lsc.to_parameters(e) == (Point{2.0, -1.0}));
  CHECK(phi_kind_from_string("lsc-quadratic") == PhiKind::lsc_quadratic);
  CHECK_THROWS_AS(phi_kind_from_string("nope"), Error);
  // Default lsc grid has integer v nodes and a step 1/8.
  auto pb = *lsc.parameter_box();
  CHECK(Grid(pb).coordinate(0, 1) == 0.125);
  CHECK(Grid(pb).coordinate(1, 33) == 1.0);
}

TEST_CASE("evaluate") {
  ProperFunction f(PiecewiseQuadratic::quadratic(2, 0, 0));
  CHECK(f(Point{1.0}) == ExtendedValue(2.0));
  ProperFunction k(kkt_f());
  CHECK(k(Point{2.0}) == ExtendedValue(2.0));
  CHECK(k(Point{-2.0}) == ExtendedValue(2.0));
  CHECK(k(Point{0.0}) == ExtendedValue(2.0));
  ProperFunction u(PiecewiseQuadratic::indicator_interval(0, 1));
  CHECK(u(Point{-5.0}).is_pos_inf());
  CHECK_THROWS_AS(f(Point{1.0, 2.0}), Error);
  ProperFunction pts(PiecewiseQuadratic::indicator_points({-1, 1}));
  CHECK(pts(Point{1.0}) == ExtendedValue(0.0));
  CHECK(pts(Point{0.0}).is_pos_inf());
}

TEST_CASE("piecewise validation") {
  CHECK_THROWS_AS(PiecewiseQuadratic({}), Error);
  CHECK_THROWS_AS(PiecewiseQuadratic({{1, 0, 0, 0, 0}}), Error);
  CHECK_THROWS_AS(PiecewiseQuadratic({{0, 2, 0, 0, 0}, {1, 3, 0, 0, 0}}), Error);
}

TEST_CASE("shift_by_quadratic") {
  auto s = shift_by_quadratic(PiecewiseQuadratic::quadratic(2, 0, 0), 1);
  CHECK(s.pieces()[0].alpha == 1.0);
  auto id = shift_by_quadratic(PiecewiseQuadratic::quadratic(2, 0, 0), 0);
  CHECK(id.pieces()[0].alpha == 2.0);
  auto k = shift_by_quadratic(kkt_f(), 1);
  const auto& p = k.pieces()[1];
  CHECK(p.lower == 0.0);
  CHECK(p.alpha == 1.0);
  CHECK(p.beta == -4.0);
  CHECK(p.gamma == 2.0);
  CHECK_THROWS_AS(shift_by_quadratic(kkt_f(), -1), Error);
}

TEST_CASE("closed-form extrema") {
  auto s = sup_quadratic_on_interval(-1, 2, 0, -kInf, kInf);
  CHECK(s.value == ExtendedValue(1.0));
  CHECK(*s.arg == 1.0);
  CHECK(sup_quadratic_on_interval(1, 0, 0, -kInf, kInf).value.is_pos_inf());
  CHECK(sup_quadratic_on_interval(0, 1, 0, -kInf, 3).value == ExtendedValue(3.0));
  CHECK(inf_quadratic_on_interval(1, -4, 0, 0, 1).value == ExtendedValue(-3.0));
  auto f = kkt_f().plus(PiecewiseQuadratic::quadratic(-1, 0, 0));
  CHECK(f.infimum().value == ExtendedValue(-2.0));
  CHECK(std::abs(*f.infimum().arg) == 2.0);
  CHECK_THROWS_AS(PiecewiseQuadratic::indicator_interval(0, 1).plus(PiecewiseQuadratic::indicator_interval(2, 3)),
                  Error);
}

TEST_CASE("support_membership") {
  const BoxDomain b = box1();
  ProperFunction L(PiecewiseQuadratic::quadratic(1, 0, 0));
  CHECK(support_membership(Elementary::zero(1), L, b));
  CHECK(!support_membership(Elementary::constant(1, 1.0), ProperFunction(PiecewiseQuadratic::quadratic(0, 0, 0)), b));
  CHECK(support_membership(Elementary(1, Point{0.0}), ProperFunction(PiecewiseQuadratic::quadratic(-1, 0, 0)), b));
  TabulatedFunction t(b, [](const Point& x) { return ExtendedValue(x[0] * x[0]); });
  CHECK(support_membership(Elementary::zero(1), ProperFunction(t), b));
  CHECK(!support_membership(Elementary::constant(1, 0.1), ProperFunction(t), b));
}

TEST_CASE("tabulated functions") {
  const BoxDomain b = BoxDomain::uniform(Point{0.0}, Point{2.0}, 3);
  auto t = TabulatedFunction::from_table(b, {0.0, 1.0, 4.0});
  CHECK(t(Point{0.5}) == ExtendedValue(0.5));
  CHECK(t(Point{3.0}).is_pos_inf());
  auto inf_node = TabulatedFunction::from_table(b, {0.0, kInf, 4.0});
  CHECK(inf_node(Point{1.5}).is_pos_inf());
  CHECK_THROWS_AS(TabulatedFunction::from_table(b, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(TabulatedFunction(b, [](const Point&) { return ExtendedValue::pos_inf(); }), Error);
  BoxDomain b2({0, 0}, {1, 1}, {2, 2});
  auto bil = TabulatedFunction::from_table(b2, {0, 1, 1, 2});
  CHECK(bil(Point{0.5, 0.5}).value() == doctest::Approx(1.0));
  auto qm = TabulatedFunction::quadric_max(b2, {Quadric(0, Point{1, 0}, 0), Quadric(0, Point{0, 1}, 0)});
  CHECK(qm(Point{5, 3}) == ExtendedValue(5.0));
}

TEST_CASE("class optimization") {
  PhiClass aff(PhiKind::affine, 1, 8, 4, 65, 9);
  auto r = optimize_over_class(
      aff, [](const Elementary& e) { return ExtendedValue(-(e.v()[0] - 0.3) * (e.v()[0] - 0.3)); }, Sense::maximize, 30);
  CHECK(r.value.value() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.best->v()[0] == doctest::Approx(0.3));
  auto inf = optimize_over_class(aff, [](const Elementary&) { return ExtendedValue::neg_inf(); }, Sense::maximize, 5);
  CHECK(inf.value.is_neg_inf());
  CHECK(!inf.best);
}
