#include "doctest.h"
#include "phiconv/core.hpp"

using namespace phiconv;

namespace {
BoxDomain box1(double lo, double hi, int n) { return BoxDomain::uniform(Point{lo}, Point{hi}, n); }
}  // namespace

TEST_CASE("extended values") {
  const auto pinf = ExtendedValue::pos_inf(), ninf = ExtendedValue::neg_inf();
  CHECK(pinf > ExtendedValue(1e300));
  CHECK(ninf < ExtendedValue(-1e300));
  CHECK((pinf + 1.0).is_pos_inf());
  CHECK_THROWS_AS((void)(pinf + ninf), Error);
  CHECK_THROWS_AS(ExtendedValue(std::nan("")), Error);
  CHECK_THROWS_AS((void)pinf.value(), Error);
  CHECK(pinf.to_string() == "+inf");
  CHECK(ninf.to_string() == "-inf");
  CHECK(ExtendedValue(-0.0).to_string() == "0");
  CHECK(ExtendedValue(0.25).to_string() == "0.25");
}

TEST_CASE("points and boxes") {
  CHECK_THROWS_AS(Point(std::span<const double>()), Error);
  CHECK_THROWS_AS((Point{1, 2, 3, 4, 5}), Error);
  CHECK_THROWS_AS((Point{std::numeric_limits<double>::infinity()}), Error);
  CHECK((Point{1, 2}).dot(Point{3, 4}) == 11);
  CHECK_THROWS_AS(box1(1, 1, 5), Error);
  CHECK_THROWS_AS(box1(0, 1, 1), Error);
  const BoxDomain b = box1(-10, 10, 2001);
  Grid g(b);
  CHECK(g.size() == 2001);
  CHECK(g.point(0)[0] == -10);
  CHECK(g.point(1000)[0] == doctest::Approx(0.0));
  CHECK(g.point(2000)[0] == 10);
  CHECK(b.clamp(Point{11})[0] == 10);
  const BoxDomain s = b.scaled(10);
  CHECK(s.upper()[0] == doctest::Approx(100));
  BoxDomain b2({0, 0}, {1, 2}, {3, 4});
  Grid g2(b2);
  CHECK(g2.size() == 12);
  CHECK(g2.point(1) == (Point{0, 2.0 / 3.0}));  // last axis fastest
}

TEST_CASE("sup_on_grid examples") {
  const BoxDomain b = box1(-1, 1, 201);
  auto zero = sup_on_grid([](const Point&) { return ExtendedValue(0.0); }, Grid(b));
  CHECK(zero.value == ExtendedValue(0.0));
  CHECK((*zero.point)[0] == -1);  // first grid point

  auto negsq = sup_on_grid([](const Point& x) { return ExtendedValue(-x[0] * x[0]); }, Grid(b));
  CHECK(negsq.value.value() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs((*negsq.point)[0]) < 1e-12);

  auto h = [](const Point& x) {
    const double t = x[0];
    return ExtendedValue(t * t - 2 * (t - 1) * (t - 1));
  };
  auto r = sup_on_grid(h, Grid(box1(-10, 10, 2001)));
  CHECK(r.value.value() == doctest::Approx(2.0));
  CHECK((*r.point)[0] == doctest::Approx(2.0));
}

TEST_CASE("inf_on_grid examples") {
  auto r = inf_on_grid([](const Point& x) { return ExtendedValue(x[0] * x[0]); }, Grid(box1(-10, 10, 2001)));
  CHECK(r.value.value() == doctest::Approx(0.0));
  CHECK(std::abs((*r.point)[0]) < 1e-12);

  auto none = inf_on_grid([](const Point&) { return ExtendedValue::pos_inf(); }, Grid(box1(-1, 1, 11)));
  CHECK(none.value.is_pos_inf());
  CHECK(!none.point);

  auto k = inf_on_grid(
      [](const Point& x) {
        const double t = x[0];
        return ExtendedValue(2 * (t - 1) * (t - 1) - t * t);
      },
      Grid(box1(0, 10, 1001)));
  CHECK(k.value.value() == doctest::Approx(-2.0));
  CHECK((*k.point)[0] == doctest::Approx(2.0));
}

TEST_CASE("refine_extremum") {
  const BoxDomain b = box1(-1, 1, 11);
  auto negsq = [](const Point& x) { return ExtendedValue(-x[0] * x[0]); };
  auto r = refine_extremum(negsq, b, Point{0}, 20, Sense::maximize);
  CHECK(r.value == ExtendedValue(0.0));
  CHECK((*r.point)[0] == 0.0);

  auto shifted = [](const Point& x) { return ExtendedValue(-(x[0] - 0.3) * (x[0] - 0.3)); };
  auto s = refine_extremum(shifted, b, Point{0.2}, 20, Sense::maximize);
  CHECK(std::abs(s.value.value()) < 1e-9);

  auto z = refine_extremum(shifted, b, Point{0.2}, 0, Sense::maximize);
  CHECK((*z.point)[0] == 0.2);
  CHECK(z.value == shifted(Point{0.2}));

  CHECK_THROWS_AS(refine_extremum(shifted, b, Point{0.2}, -1, Sense::maximize), Error);
  CHECK_THROWS_AS(refine_extremum(shifted, b, Point{2.0}, 3, Sense::maximize), Error);
}

TEST_CASE("grid invariants") {
  // sup dominates every sample; inf = -sup(-h) for finite h.
  const BoxDomain b = box1(-3, 2, 37);
  auto h = [](const Point& x) { return ExtendedValue(std::sin(3 * x[0]) + 0.1 * x[0]); };
  const Grid g(b);
  auto s = sup_on_grid(h, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(s.value >= h(g.point(i)));
  auto neg = [&](const Point& x) { return -h(x); };
  CHECK(inf_on_grid(h, g).value == -sup_on_grid(neg, g).value);
}

TEST_CASE("sentinel") {
  const BoxDomain b = box1(-10, 10, 201);
  SentinelConfig cfg;
  auto lin = [](const Point& x) { return ExtendedValue(x[0]); };
  CHECK(sup_with_sentinel(lin, b, 10, cfg).value.is_pos_inf());
  auto bounded = [](const Point& x) { return ExtendedValue(-(x[0] - 1) * (x[0] - 1)); };
  auto r = sup_with_sentinel(bounded, b, 20, cfg);
  CHECK(r.value.value() == doctest::Approx(0.0).epsilon(1e-9));
  auto m = inf_with_sentinel(lin, b, 10, cfg);
  CHECK(m.value.is_neg_inf());
}
