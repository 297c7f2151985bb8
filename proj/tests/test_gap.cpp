#include "doctest.h"
#include "phiconv/gap.hpp"

using namespace phiconv;

namespace {
BoxDomain box1(double lo = -10, double hi = 10, int n = 2001) { return BoxDomain::uniform(Point{lo}, Point{hi}, n); }
ProperFunction quad(double a, double b = 0, double c = 0) { return ProperFunction(PiecewiseQuadratic::quadratic(a, b, c)); }
Elementary el(double a, double v, double c = 0) { return Elementary(a, Point{v}, c); }
ProblemInstance ex61() { return {quad(2), quad(-1), box1(), PhiClass(PhiKind::lsc_quadratic, 1)}; }
ProblemInstance fenchel() { return {quad(1), quad(1), box1(), PhiClass(PhiKind::affine, 1)}; }
Quadric qd(double q2, double q1, double q0) { return Quadric(q2, Point{q1}, q0); }
}  // namespace

TEST_CASE("quadric minima") {
  CHECK(min_quadric_on_box(qd(1, -2, 0), box1(-2, 2, 3)) == ExtendedValue(-1.0));
  CHECK(min_quadric_on_box(qd(-1, 0, 0), box1(-2, 2, 3)) == ExtendedValue(-4.0));
  CHECK(inf_quadric(qd(-1, 0, 0)).is_neg_inf());
  CHECK(inf_quadric(qd(0, 1, 0)).is_neg_inf());
  CHECK(inf_quadric(qd(0, 0, 3)) == ExtendedValue(3.0));
}

TEST_CASE("intersection property") {
  auto c = check_intersection_property(Elementary::constant(1, -0.5), el(3, 1), -0.5, box1());
  CHECK(c.holds);
  CHECK(*c.t0 == 1.0);
  auto d = check_intersection_property(qd(1, 0, 0), qd(-1, 0, 0), -1.0, box1(-2, 2, 41));
  CHECK(d.holds);
  CHECK(d.min_over_x_at_t0.to_double() >= -1.0);
  auto e = check_intersection_property(el(1, 0), el(1, 0), 0.0, box1(-2, 2, 41));
  CHECK(!e.holds);
}

TEST_CASE("direct emptiness oracle") {
  CHECK(check_intersection_direct(qd(0, 0, 0), qd(-1, 0, 0), -0.5, box1(-2, 2, 81), 101));
  CHECK(!check_intersection_direct(qd(-1, 0, 0), qd(-1, 0, 0), 0.0, box1(-2, 2, 81), 101));
}

TEST_CASE("certificates") {
  CertifyOptions opts;
  opts.seeds = {{el(1, 0), el(3, 0)}};
  auto certs = certify_zero_gap_via_intersection(ex61(), {-0.5, -0.1, -0.01}, opts);
  REQUIRE(certs.size() == 3);
  for (const auto& c : certs) {
    CHECK(c.found);
    CHECK(c.phase == "seed");
    CHECK(*c.psi1 == el(1, 0));
    CHECK(*c.psi2 == el(3, 0));
  }
  auto f = certify_zero_gap_via_intersection(fenchel(), {-0.1});
  CHECK(f[0].found);
  CertifyOptions none;
  none.budget = 0;
  auto z = certify_zero_gap_via_intersection(fenchel(), {-0.1}, none);
  CHECK(!z[0].found);
  CHECK(z[0].phase == "inconclusive");
  CHECK_THROWS_AS(certify_zero_gap_via_intersection(fenchel(), {0.5}), Error);
}

TEST_CASE("bui condition") {
  auto r = check_bui_condition(ex61(), default_eps_list());
  CHECK(!r.overall);
  auto f = check_bui_condition(fenchel(), default_eps_list());
  CHECK(f.overall);
  for (const auto& e : f.per_eps) {
    REQUIRE(e.witness);
    CHECK(std::abs(e.witness->x_bar[0]) < 1e-6);
    CHECK(std::abs(e.witness->phi.v()[0]) < 1e-6);
  }
  ProblemInstance shifted(quad(1), quad(1, 0, -1), box1(), PhiClass(PhiKind::affine, 1));
  CHECK(check_bui_condition(shifted, {0.1}).overall);
}

TEST_CASE("bridge report on example-6.1") {
  CertifyOptions opts;
  opts.seeds = {{el(1, 0), el(3, 0)}};
  auto b = zero_gap_bridge_report(ex61(), {}, opts);
  CHECK(!b.condition1);
  CHECK(b.condition2);
  CHECK(!b.hyp_symmetric);
  CHECK(!b.applicable_2_to_1);
  CHECK(!b.contradiction);
  CHECK(b.alphas.size() == 3);
  auto f = zero_gap_bridge_report(fenchel(), {-0.1});
  CHECK(f.condition1);
  CHECK(f.condition2);
  CHECK(!f.contradiction);
}
