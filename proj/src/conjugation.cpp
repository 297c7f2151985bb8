#include "phiconv/conjugation.hpp"

namespace phiconv {

std::string to_string(Method m) { return m == Method::closed_form ? "closed-form" : "grid-oracle"; }

ConjugateValue sup_quadric_minus_oracle(const ProperFunction& f, const Quadric& q, const BoxDomain& box,
                                        const SearchConfig& cfg) {
  if (q.dim() != f.dim() || box.dim() != f.dim()) throw_invalid("conjugate: dimension mismatch");
  auto h = [&](const Point& x) -> ExtendedValue {
    ExtendedValue fx = f(x);
    if (fx.is_pos_inf()) return ExtendedValue::neg_inf();
    return q(x) - fx.value();
  };
  Extremum e = sup_with_sentinel(h, box, cfg.refine_rounds, cfg.sentinel);
  ConjugateValue out{e.value, std::nullopt, Method::grid_oracle};
  if (e.value.is_finite()) out.attaining_point = e.point;
  return out;
}

ConjugateValue sup_quadric_minus(const ProperFunction& f, const Quadric& q, const BoxDomain& box,
                                 const SearchConfig& cfg) {
  const PiecewiseQuadratic* pw = f.piecewise();
  if (!pw) return sup_quadric_minus_oracle(f, q, box, cfg);
  if (q.dim() != 1) throw_invalid("conjugate: dimension mismatch");
  ScalarExtremum s = pw->sup_of_quadratic_minus(q.q2, q.q1[0], q.q0);
  ConjugateValue out{s.value, std::nullopt, Method::closed_form};
  if (s.value.is_finite() && s.arg) out.attaining_point = Point{*s.arg};
  return out;
}

ConjugateValue phi_conjugate(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                             const SearchConfig& cfg) {
  return sup_quadric_minus(f, phi.as_quadric(), box, cfg);
}

ConjugateValue left_conjugate(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                              const SearchConfig& cfg) {
  return sup_quadric_minus(f, -phi.as_quadric(), box, cfg);
}

ConjugateValue phi_conjugate_oracle(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                                    const SearchConfig& cfg) {
  return sup_quadric_minus_oracle(f, phi.as_quadric(), box, cfg);
}

ConjugateValue left_conjugate_oracle(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                                     const SearchConfig& cfg) {
  return sup_quadric_minus_oracle(f, -phi.as_quadric(), box, cfg);
}

BiconjugateEvaluator::BiconjugateEvaluator(ProperFunction f, PhiClass phi, BoxDomain box, SearchConfig cfg,
                                           const std::vector<Elementary>& extras)
    : f_(std::move(f)), phi_(std::move(phi)), box_(std::move(box)), cfg_(cfg) {
  auto add = [&](const Elementary& e) {
    const Elementary e0 = e.with_constant(0.0);
    ConjugateValue cv = phi_conjugate(f_, e0, box_, cfg_);
    if (cv.value.is_finite()) table_.emplace_back(e0, cv.value.value());
  };
  if (auto pbox = phi_.parameter_box()) {
    Grid grid(*pbox);
    for (std::size_t i = 0; i < grid.size(); ++i) add(phi_.from_parameters(grid.point(i)));
  } else {
    add(Elementary::zero(phi_.dim()));
  }
  for (const auto& e : extras)
    if (phi_.contains(e)) add(e);
}

BiconjugateValue BiconjugateEvaluator::operator()(const Point& x) const {
  BiconjugateValue best{ExtendedValue::neg_inf(), std::nullopt};
  for (const auto& [e, conj] : table_) {
    const ExtendedValue v = e(x) - conj;
    if (v > best.value) best = {v, e};
  }
  const auto pbox = phi_.parameter_box();
  if (f_.closed_form() && pbox && best.best && phi_.in_bounds(*best.best) && cfg_.refine_rounds > 0) {
    auto h = [&](const Point& p) -> ExtendedValue {
      const Elementary e = phi_.from_parameters(p);
      ConjugateValue cv = phi_conjugate(f_, e, box_, cfg_);
      if (!cv.value.is_finite()) return ExtendedValue::neg_inf();
      return e(x) - cv.value;
    };
    Extremum r = refine_extremum(h, *pbox, phi_.to_parameters(*best.best), cfg_.refine_rounds, Sense::maximize);
    if (r.point && r.value > best.value) best = {r.value, phi_.from_parameters(*r.point)};
  }
  return best;
}

ExtendedValue biconjugate(const ProperFunction& f, const Point& x, const PhiClass& phi, const BoxDomain& box,
                          const SearchConfig& cfg) {
  if (!box.contains(x)) throw_invalid("biconjugate: x must lie in the box");
  return BiconjugateEvaluator(f, phi, box, cfg)(x).value;
}

bool fenchel_moreau_check(const ProperFunction& f, const Elementary& phi, const Point& x, const BoxDomain& box,
                          const SearchConfig& cfg) {
  const ExtendedValue fx = f(x);
  if (!fx.is_finite()) throw_invalid("fenchel_moreau_check: x is not in dom f");
  const ExtendedValue conj = phi_conjugate(f, phi, box, cfg).value;
  return fx + conj >= ExtendedValue(phi(x) - cfg.inequality_tol);
}

bool biconjugate_leq_f(const ProperFunction& f, const PhiClass& phi, const BoxDomain& box, const SearchConfig& cfg) {
  BiconjugateEvaluator bic(f, phi, box, cfg);
  Grid grid(box);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    const ExtendedValue fx = f(x);
    if (!fx.is_finite()) continue;
    if (bic(x).value > ExtendedValue(fx.value() + cfg.equality_tol)) return false;
  }
  return true;
}

}  // namespace phiconv
