#include "doctest.h"
#include "phiconv/duality.hpp"

using namespace phiconv;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
BoxDomain box1() { return BoxDomain::uniform(Point{-10.0}, Point{10.0}, 2001); }
ProperFunction quad(double a, double b = 0, double c = 0) { return ProperFunction(PiecewiseQuadratic::quadratic(a, b, c)); }
Elementary el(double a, double v, double c = 0) { return Elementary(a, Point{v}, c); }
ProblemInstance ex61() { return {quad(2), quad(-1), box1(), PhiClass(PhiKind::lsc_quadratic, 1)}; }
ProblemInstance fenchel() { return {quad(1), quad(1), box1(), PhiClass(PhiKind::affine, 1)}; }
ProblemInstance zeros() { return {quad(0), quad(0), box1(), PhiClass(PhiKind::affine, 1)}; }
ProblemInstance kkt_example() {
  PiecewiseQuadratic f({{-kInf, 0.0, 2.0, 4.0, 2.0}, {0.0, kInf, 2.0, -4.0, 2.0}});
  return {ProperFunction(f), quad(-1), box1(), PhiClass(PhiKind::lsc_quadratic, 1)};
}
}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(ProblemInstance(ProperFunction(PiecewiseQuadratic::indicator_interval(0, 1)),
                                  ProperFunction(PiecewiseQuadratic::indicator_interval(2, 3)), box1(),
                                  PhiClass(PhiKind::affine, 1)),
                  Error);
  CHECK_THROWS_AS(ProblemInstance(quad(1), quad(1), box1(), PhiClass(PhiKind::affine, 2)), Error);
}

TEST_CASE("perturbation and coupling") {
  CHECK(perturbation(ex61(), Point{1.0}, Point{0.0}) == ExtendedValue(1.0));
  CHECK(perturbation(ex61(), Point{1.0}, Point{1.0}) == ExtendedValue(-2.0));
  CHECK(perturbation(fenchel(), Point{3.0}, Point{0.0}) == ExtendedValue(18.0));
  CHECK(coupling(el(0, 0), el(0, 3, 1), Point{5.0}, Point{2.0}) == 6.0);
  CHECK(coupling(el(1, 2), el(3, 1), Point{1.5}, Point{0.0}) == el(1, 2)(Point{1.5}));
  CHECK(coupling(el(0, 0), el(1, 0), Point{1.0}, Point{1.0}) == -3.0);
}

TEST_CASE("perturbation conjugate at zero") {
  CHECK(perturbation_conjugate_zero(ex61(), el(1, 0)) == ExtendedValue(0.0));
  CHECK(perturbation_conjugate_zero(ex61(), el(1.5, 0)) == ExtendedValue(0.0));
  CHECK(perturbation_conjugate_zero(ex61(), el(0.5, 0)).is_pos_inf());
  // The lattice version is a lower bound that is already tight here.
  const BoxDomain small = BoxDomain::uniform(Point{-3.0}, Point{3.0}, 61);
  CHECK(perturbation_conjugate_direct(ex61(), el(1.5, 0), small, small).to_double() == doctest::Approx(0.0));
}

TEST_CASE("Lagrangian") {
  const auto inst = ex61();
  CHECK(lagrangian(inst, Point{2.0}, el(1, 0)).value == ExtendedValue(4.0));
  CHECK(lagrangian(inst, Point{1.0}, el(3, 0)).value == ExtendedValue(-1.0));
  auto inf = lagrangian(inst, Point{1.0}, el(0.5, 0));
  CHECK(!inf.feasible);
  CHECK(inf.value.is_neg_inf());
  CHECK(lagrangian_inf(inst, el(1, 0)) == ExtendedValue(0.0));
}

TEST_CASE("primal values") {
  auto p = val_primal(ex61());
  CHECK(p.value == ExtendedValue(0.0));
  CHECK((*p.argmin)[0] == 0.0);
  auto k = val_primal(kkt_example());
  CHECK(k.value.value() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs((*k.argmin)[0]) == doctest::Approx(2.0));
  CHECK(val_primal(fenchel()).value == ExtendedValue(0.0));
  CHECK(val_lagrangian_primal(ex61()).value.value() == doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("dual values") {
  auto d = val_lagrangian_dual(ex61());
  CHECK(d.value.value() == doctest::Approx(0.0).epsilon(1e-3));
  REQUIRE(d.best);
  CHECK(d.best->a() >= 1.0);
  CHECK(d.best->a() <= 2.0);
  CHECK(std::abs(d.best->v()[0]) < 1e-6);
  CHECK(val_lagrangian_dual(fenchel()).value.value() == doctest::Approx(0.0).epsilon(1e-9));
  // g = -2x^2 with a_max = 1: g* is +inf on the whole truncated class.
  ProblemInstance none(quad(2), quad(-2), box1(), PhiClass(PhiKind::lsc_quadratic, 1, 1.0));
  CHECK(val_cd(none).value.is_neg_inf());
}

TEST_CASE("symmetric duals") {
  CHECK(val_cd_sym(ex61()).value.is_neg_inf());
  CHECK(val_cd_sym(fenchel()).value.value() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(val_cd_sym(zeros()).value == ExtendedValue(0.0));
  CHECK(val_icd(ex61()).value.is_neg_inf());
  CHECK(val_icd(fenchel()).value.value() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(val_icd(zeros()).value == ExtendedValue(0.0));
  PhiClass odd = PhiClass(PhiKind::affine, 1).with_flags({true, true, false, true});
  try {
    val_icd(ex61().with_phi(odd));
    FAIL("expected unsupported-configuration");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_configuration);
  }
}

TEST_CASE("chain report") {
  auto r = duality_chain_report(ex61());
  CHECK(r.val_P == ExtendedValue(0.0));
  CHECK(r.val_LP.value() == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(r.val_LD.value() == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(r.val_CD.value() == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(r.val_CD_sym.is_neg_inf());
  CHECK(r.val_ICD.is_neg_inf());
  CHECK(r.gap_CD.value() == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(r.gap_ICD.is_pos_inf());
  CHECK(r.chain_ok);
  auto f = duality_chain_report(fenchel());
  for (auto v : {f.val_P, f.val_LP, f.val_LD, f.val_CD, f.val_CD_sym, f.val_ICD})
    CHECK(v.value() == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(value_gap(ExtendedValue::neg_inf(), ExtendedValue::neg_inf()) == ExtendedValue(0.0));
}
