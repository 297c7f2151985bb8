#include "doctest.h"
#include "phiconv/kkt.hpp"

using namespace phiconv;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
BoxDomain box1() { return BoxDomain::uniform(Point{-10.0}, Point{10.0}, 2001); }
ProperFunction quad(double a, double b = 0, double c = 0) { return ProperFunction(PiecewiseQuadratic::quadratic(a, b, c)); }
Elementary el(double a, double v, double c = 0) { return Elementary(a, Point{v}, c); }
ProblemInstance fenchel() { return {quad(1), quad(1), box1(), PhiClass(PhiKind::affine, 1)}; }
ProblemInstance ex61() { return {quad(2), quad(-1), box1(), PhiClass(PhiKind::lsc_quadratic, 1)}; }
ProblemInstance kkt_example() {
  PiecewiseQuadratic f({{-kInf, 0.0, 2.0, 4.0, 2.0}, {0.0, kInf, 2.0, -4.0, 2.0}});
  return {ProperFunction(f), quad(-1), box1(), PhiClass(PhiKind::lsc_quadratic, 1)};
}
}  // namespace

TEST_CASE("symmetric KKT") {
  auto c = verify_kkt_symmetric(fenchel(), Point{0.0}, el(0, 0));
  CHECK(c.cond1.holds);
  CHECK(c.cond2.holds);
  CHECK(c.optimal);
  CHECK(c.primal_value == c.dual_value);
  auto n = verify_kkt_symmetric(fenchel(), Point{1.0}, el(0, 0));
  CHECK(!n.cond1.holds);
  CHECK(!n.optimal);
  CHECK(n.conditions_consistent);
  CHECK_THROWS_AS(verify_kkt_symmetric(ex61(), Point{0.0}, el(0, 0)), Error);
}

TEST_CASE("symmetric KKT on a tabulated pair") {
  // f = x^2, g = -2x + 1 on the box; x* = 1, phi* = -2x + c: -phi* = 2x is a
  // subgradient of x^2 at 1 and g*(phi*) = sup -2x - c - (-2x + 1) is finite.
  const BoxDomain b = box1();
  ProperFunction f(TabulatedFunction(b, [](const Point& x) { return ExtendedValue(x[0] * x[0]); }));
  ProperFunction g(TabulatedFunction(b, [](const Point& x) { return ExtendedValue(-2 * x[0] + 1); }));
  ProblemInstance inst(f, g, b, PhiClass(PhiKind::affine, 1, 8, 8, 65, 17));
  auto c = verify_kkt_symmetric(inst, Point{1.0}, el(0, -2));
  CHECK(c.cond1.holds);
  CHECK(c.cond2.holds);
  CHECK(c.optimal);
  CHECK(c.dual_value.value() == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("lsc KKT, worked example") {
  auto c = verify_kkt_lsc(kkt_example(), Point{2.0}, el(1, 0));
  CHECK(c.cond1.holds);
  CHECK(c.cond2.holds);
  CHECK(c.primal_value.value() == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(c.dual_value.value() == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(c.optimal);
  CHECK(c.conditions_consistent);

  auto z = verify_kkt_lsc(kkt_example(), Point{0.0}, el(1, 0));
  CHECK(!z.cond1.holds);
  CHECK(z.cond1.witness_point);
  CHECK(!z.optimal);
  CHECK(z.conditions_consistent);

  auto e = verify_kkt_lsc(ex61(), Point{0.0}, el(1, 0));
  CHECK(e.cond1.holds);
  CHECK(e.cond2.holds);
  CHECK(e.dual_value == ExtendedValue(0.0));
  CHECK(e.optimal);
  CHECK_THROWS_AS(verify_kkt_lsc(fenchel(), Point{0.0}, el(0, 0)), Error);
}

TEST_CASE("optimal iff both conditions, symmetric and lsc") {
  // optimal <=> cond1 && cond2, over a sweep of candidate pairs.
  for (double x : {-2.0, 0.0, 1.0, 2.0})
    for (double a : {0.0, 1.0, 1.5}) {
      auto c = verify_kkt(kkt_example(), Point{x}, el(a, 0));
      CHECK(c.optimal == (c.cond1.holds && c.cond2.holds));
    }
  for (double x : {-1.0, 0.0, 1.0})
    for (double v : {-1.0, 0.0, 1.0}) {
      auto c = verify_kkt(fenchel(), Point{x}, el(0, v));
      CHECK(c.optimal == (c.cond1.holds && c.cond2.holds));
    }
}

TEST_CASE("KKT pair search") {
  auto k = search_kkt_pair(kkt_example(), 20000);
  REQUIRE(k);
  CHECK(std::abs(k->x[0]) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(k->phi.a() == doctest::Approx(1.0));
  auto e = search_kkt_pair(ex61(), 20000);
  REQUIRE(e);
  CHECK(std::abs(e->x[0]) < 1e-6);
  CHECK(e->phi.a() >= 1.0);
  CHECK(e->phi.a() <= 2.0);
  ProblemInstance gap(ProperFunction(PiecewiseQuadratic::indicator_points({-1, 1})), quad(1), box1(),
                      PhiClass(PhiKind::affine, 1));
  CHECK(!search_kkt_pair(gap, 20000));
}
