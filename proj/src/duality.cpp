#include "phiconv/duality.hpp"

#include <algorithm>

namespace phiconv {

namespace {

bool domains_meet_in_box(const ProperFunction& f, const ProperFunction& g, const BoxDomain& box) {
  const auto* pf = f.piecewise();
  const auto* pg = g.piecewise();
  if (pf && pg) {
    const double lo = box.lower()[0], hi = box.upper()[0];
    for (const auto& a : pf->pieces())
      for (const auto& b : pg->pieces())
        if (std::max({a.lower, b.lower, lo}) <= std::min({a.upper, b.upper, hi})) return true;
    return false;
  }
  Grid grid(box);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    if (f(x).is_finite() && g(x).is_finite()) return true;
  }
  return false;
}

}  // namespace

ProblemInstance::ProblemInstance(ProperFunction f, ProperFunction g, BoxDomain box, PhiClass phi, std::string label)
    : f_(std::move(f)), g_(std::move(g)), box_(std::move(box)), phi_(std::move(phi)), label_(std::move(label)) {
  if (f_.dim() != box_.dim() || g_.dim() != box_.dim() || phi_.dim() != box_.dim())
    throw_invalid("problem instance: f, g, box and phi class must share one dimension");
  if (!domains_meet_in_box(f_, g_, box_)) throw_invalid("problem instance: dom f and dom g do not meet in the box");
}

ExtendedValue perturbation(const ProblemInstance& inst, const Point& x, const Point& y) {
  return inst.f()(x) + inst.g()(x + y);
}

double coupling(const Elementary& phi, const Elementary& psi, const Point& x, const Point& y) {
  return phi(x) + psi(x + y) - psi(x);
}

ExtendedValue perturbation_conjugate_zero(const ProblemInstance& inst, const Elementary& phi, const SearchConfig& cfg) {
  return left_conjugate(inst.f(), phi, inst.box(), cfg).value + phi_conjugate(inst.g(), phi, inst.box(), cfg).value;
}

ExtendedValue perturbation_conjugate_direct(const ProblemInstance& inst, const Elementary& phi, const BoxDomain& x_box,
                                            const BoxDomain& y_box) {
  const Elementary zero = Elementary::zero(phi.dim());
  Grid gx(x_box), gy(y_box);
  ExtendedValue best = ExtendedValue::neg_inf();
  for (std::size_t i = 0; i < gx.size(); ++i) {
    const Point x = gx.point(i);
    const ExtendedValue fx = inst.f()(x);
    if (fx.is_pos_inf()) continue;
    for (std::size_t j = 0; j < gy.size(); ++j) {
      const Point y = gy.point(j);
      const ExtendedValue gz = inst.g()(x + y);
      if (gz.is_pos_inf()) continue;
      best = std::max(best, ExtendedValue(coupling(zero, phi, x, y) - fx.value() - gz.value()));
    }
  }
  return best;
}

LagrangianValue lagrangian(const ProblemInstance& inst, const Point& x, const Elementary& phi, const SearchConfig& cfg) {
  const ExtendedValue gs = phi_conjugate(inst.g(), phi, inst.box(), cfg).value;
  if (gs.is_pos_inf()) return {ExtendedValue::neg_inf(), false};
  const ExtendedValue fx = inst.f()(x);
  if (fx.is_pos_inf()) return {fx, true};
  return {fx + ExtendedValue(phi(x)) - gs, true};
}

ExtendedValue lagrangian_inf(const ProblemInstance& inst, const Elementary& phi, const SearchConfig& cfg) {
  const ExtendedValue gs = phi_conjugate(inst.g(), phi, inst.box(), cfg).value;
  if (gs.is_pos_inf()) return ExtendedValue::neg_inf();
  const ExtendedValue fs = left_conjugate(inst.f(), phi, inst.box(), cfg).value;
  return -fs - gs;
}

PrimalValue val_primal(const ProblemInstance& inst, const SearchConfig& cfg) {
  const auto* pf = inst.f().piecewise();
  const auto* pg = inst.g().piecewise();
  if (pf && pg) {
    ScalarExtremum s = pf->plus(*pg).infimum();
    PrimalValue out{s.value, std::nullopt, Method::closed_form};
    if (s.value.is_finite() && s.arg) out.argmin = Point{*s.arg};
    return out;
  }
  auto h = [&](const Point& x) { return inst.f()(x) + inst.g()(x); };
  Extremum e = inf_with_sentinel(h, inst.box(), cfg.refine_rounds, cfg.sentinel);
  PrimalValue out{e.value, std::nullopt, Method::grid_oracle};
  if (e.value.is_finite()) out.argmin = e.point;
  return out;
}

PrimalValue val_lagrangian_primal(const ProblemInstance& inst, const SearchConfig& cfg,
                                  const std::vector<Elementary>& extras, const std::optional<PrimalValue>& primal) {
  const PrimalValue p = primal ? *primal : val_primal(inst, cfg);
  const Method method = inst.f().closed_form() && inst.g().closed_form() ? Method::closed_form : Method::grid_oracle;
  // f + g** <= f + g, so an unbounded primal forces an unbounded LP.
  if (p.value.is_neg_inf()) return {ExtendedValue::neg_inf(), std::nullopt, method};

  BiconjugateEvaluator bic(inst.g(), inst.phi(), inst.box(), cfg, extras);
  auto h = [&](const Point& x) -> ExtendedValue {
    const ExtendedValue fx = inst.f()(x);
    if (fx.is_pos_inf()) return fx;
    const ExtendedValue b = bic(x).value;
    if (b.is_neg_inf()) return b;
    return fx + b;
  };

  Extremum best = inf_on_grid(h, Grid(inst.box()));
  std::vector<Point> candidates;
  if (p.argmin) candidates.push_back(*p.argmin);
  if (const auto* pf = inst.f().piecewise()) {
    for (const auto& piece : pf->pieces())
      for (double e : {piece.lower, piece.upper})
        if (std::isfinite(e) && e >= inst.box().lower()[0] && e <= inst.box().upper()[0]) candidates.push_back(Point{e});
  }
  for (const Point& x : candidates) {
    if (best.value.is_neg_inf()) break;
    const ExtendedValue v = h(x);
    if (v < best.value) best = {v, x};
  }
  if (best.value.is_finite() && best.point && inst.box().contains(*best.point)) {
    Extremum r = refine_extremum(h, inst.box(), *best.point, cfg.refine_rounds, Sense::minimize);
    if (r.value < best.value) best = r;
  }
  PrimalValue out{best.value, std::nullopt, method};
  if (best.value.is_finite()) out.argmin = best.point;
  return out;
}

DualValue val_cd(const ProblemInstance& inst, const SearchConfig& cfg, const std::vector<Elementary>& extras) {
  auto obj = [&](const Elementary& e) { return lagrangian_inf(inst, e, cfg); };
  ClassExtremum m = optimize_over_class(inst.phi(), obj, Sense::maximize, cfg.refine_rounds, extras);
  return {m.value, m.best};
}

DualValue val_lagrangian_dual(const ProblemInstance& inst, const SearchConfig& cfg,
                              const std::vector<Elementary>& extras) {
  // sup_phi inf_x L(x, phi) is exactly the conjugate dual objective.
  return val_cd(inst, cfg, extras);
}

DualValue val_cd_sym(const ProblemInstance& inst, const SearchConfig& cfg) {
  const PhiClass sub = inst.phi().affine_subclass();
  auto obj = [&](const Elementary& e) -> ExtendedValue {
    const ExtendedValue gs = phi_conjugate(inst.g(), e, inst.box(), cfg).value;
    if (gs.is_pos_inf()) return ExtendedValue::neg_inf();
    const ExtendedValue fs = phi_conjugate(inst.f(), *e.negated(), inst.box(), cfg).value;
    return -fs - gs;
  };
  ClassExtremum m = optimize_over_class(sub, obj, Sense::maximize, cfg.refine_rounds);
  return {m.value, m.best};
}

IcdValue val_icd(const ProblemInstance& inst, const SearchConfig& cfg) {
  const PhiFlags& fl = inst.phi().flags();
  if (!fl.additive || !fl.contains_zero)
    throw_unsupported("inf-convolution dual needs a class that contains 0 and is closed under addition");
  // phi1 + phi2 = 0 with both quadratic coefficients >= 0 forces a1 = a2 = 0,
  // so the pairs are (v, -v) over the affine part of the class.
  DualValue d = val_cd_sym(inst, cfg);
  IcdValue out{d.value, std::nullopt};
  if (d.best) out.pair = std::make_pair(*d.best, *d.best->negated());
  return out;
}

ExtendedValue value_gap(ExtendedValue x, ExtendedValue y) {
  if (x == y) return 0.0;
  return x - y;
}

DualityReport duality_chain_report(const ProblemInstance& inst, const SearchConfig& cfg) {
  DualityReport r;
  r.label = inst.label();
  r.kind = inst.phi().kind();
  r.a_max = inst.phi().a_max();
  r.v_max = inst.phi().v_max();
  r.a_points = inst.phi().a_points();
  r.v_points = inst.phi().v_points();
  r.tolerance = cfg.equality_tol;
  const std::string closed = inst.f().closed_form() && inst.g().closed_form() ? "closed-form" : "grid-oracle";

  std::vector<Elementary> cd_extras;
  try {
    IcdValue icd = val_icd(inst, cfg);
    r.val_ICD = icd.value;
    r.best_icd_pair = icd.pair;
    if (icd.pair) cd_extras.push_back(icd.pair->first);
    r.notes["val_ICD"] = "zero-sum pairs reduce to (v, -v) over the affine part of the class";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unsupported_configuration) throw;
    r.val_ICD = ExtendedValue::neg_inf();
    r.notes["val_ICD"] = std::string("not computed: ") + e.what();
  }
  r.methods["val_ICD"] = closed + " conjugates, parameter grid + refinement";

  DualValue sym = val_cd_sym(inst, cfg);
  r.val_CD_sym = sym.value;
  r.best_cd_sym_elementary = sym.best;
  if (sym.best) cd_extras.push_back(*sym.best);
  r.methods["val_CD_sym"] = closed + " conjugates over the affine subclass";
  if (inst.phi().kind() == PhiKind::lsc_quadratic)
    r.notes["val_CD_sym"] = "-phi representable only for a = 0, searched over the affine subclass";

  DualValue cd = val_cd(inst, cfg, cd_extras);
  r.val_CD = cd.value;
  r.val_LD = cd.value;
  r.best_dual_elementary = cd.best;
  r.methods["val_CD"] = closed + " conjugates, parameter grid + refinement (c = 0)";
  r.methods["val_LD"] = "same computation as val_CD: sup of inf_x L(x, phi) = -*f(phi) - g*(phi)";

  PrimalValue p = val_primal(inst, cfg);
  r.val_P = p.value;
  r.argmin_P = p.argmin;
  r.methods["val_P"] = p.method == Method::closed_form ? "closed-form infimum of f + g" : "grid + refinement with sentinel";

  std::vector<Elementary> lp_extras;
  if (cd.best) lp_extras.push_back(*cd.best);
  PrimalValue lp = val_lagrangian_primal(inst, cfg, lp_extras, p);
  r.val_LP = lp.value;
  r.argmin_LP = lp.argmin;
  r.methods["val_LP"] = "inf over the box of f + g** (biconjugate over the truncated class)";

  const std::string bound = "lower bound of the untruncated sup (a <= " + ExtendedValue(r.a_max).to_string() +
                            ", |v_k| <= " + ExtendedValue(r.v_max).to_string() + ")";
  for (const char* k : {"val_CD", "val_LD", "val_CD_sym"}) r.notes[k] = r.notes.count(k) ? r.notes[k] + "; " + bound : bound;
  r.notes["val_ICD"] += "; " + bound;
  r.notes["val_LP"] = "biconjugate is a lower bound under truncation; the inf over x is restricted to the box";

  const double tol = cfg.equality_tol;
  auto geq = [&](ExtendedValue a, ExtendedValue b, const char* what) {
    if (!(a >= b - ExtendedValue(tol))) {
      r.chain_ok = false;
      r.violations.push_back(what);
    }
  };
  geq(r.val_P, r.val_LP, "val_P >= val_LP");
  geq(r.val_LP, r.val_LD, "val_LP >= val_LD");
  if (!(r.val_LD == r.val_CD)) {
    r.chain_ok = false;
    r.violations.push_back("val_LD == val_CD");
  }
  geq(r.val_CD, r.val_ICD, "val_CD >= val_ICD");

  r.gap_CD = value_gap(r.val_P, r.val_CD);
  r.gap_ICD = value_gap(r.val_P, r.val_ICD);
  return r;
}

}  // namespace phiconv
