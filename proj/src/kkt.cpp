#include "phiconv/kkt.hpp"

#include <algorithm>

namespace phiconv {

namespace {

bool phi_convex_at(const ProperFunction& f, const Point& x, const PhiClass& phi, const BoxDomain& box,
                   const SearchConfig& cfg, const std::vector<Elementary>& extras) {
  const ExtendedValue fx = f(x);
  if (!fx.is_finite()) return false;
  const ExtendedValue b = BiconjugateEvaluator(f, phi, box, cfg, extras)(x).value;
  return b.is_finite() && std::abs(b.value() - fx.value()) <= cfg.agreement_tol;
}

SubgradientCertificate dual_side(const ProblemInstance& inst, const Point& x, const Elementary& phi,
                                 const SearchConfig& cfg, std::vector<std::string>& notes) {
  const ExtendedValue gs = phi_conjugate(inst.g(), phi, inst.box(), cfg).value;
  if (!gs.is_finite()) {
    notes.push_back("g*(phi*) = +inf, so x* cannot lie in its dual subdifferential");
    SubgradientCertificate c;
    c.holds = false;
    c.worst_violation = std::numeric_limits<double>::infinity();
    c.tolerance = cfg.inequality_tol;
    return c;
  }
  return is_dual_subgradient(inst.g(), x, phi, inst.phi(), inst.box(), cfg);
}

void finish(KktCertificate& c, const ProblemInstance& inst, const SearchConfig& cfg) {
  c.values_agree = c.primal_value.is_finite() && c.dual_value.is_finite() &&
                   std::abs(c.primal_value.value() - c.dual_value.value()) <= cfg.equality_tol;
  const bool conds = c.cond1.holds && c.cond2.holds;
  c.optimal = conds && c.values_agree;
  c.conditions_consistent = conds == c.values_agree;
  c.a_max = inst.phi().a_max();
  c.v_max = inst.phi().v_max();
  c.f_phi_convex_at_x = phi_convex_at(inst.f(), c.x_star, inst.phi(), inst.box(), cfg, {});
  c.g_phi_convex_at_x = phi_convex_at(inst.g(), c.x_star, inst.phi(), inst.box(), cfg, {c.phi_star});
  if (!c.f_phi_convex_at_x) c.notes.push_back("f** != f at x* (tol 1e-4): Phi-convexity of f is doubtful");
  if (!c.g_phi_convex_at_x) c.notes.push_back("g** != g at x* (tol 1e-4): Phi-convexity of g is doubtful");
  if (!c.conditions_consistent)
    c.notes.push_back("conditions and value equality disagree; check the Phi-convexity notes and truncation");
  c.notes.push_back("dual-side test searched a <= " + ExtendedValue(c.a_max).to_string() +
                    ", |v_k| <= " + ExtendedValue(c.v_max).to_string());
}

}  // namespace

KktCertificate verify_kkt_symmetric(const ProblemInstance& inst, const Point& x_star, const Elementary& phi_star,
                                    const SearchConfig& cfg) {
  if (!inst.phi().flags().symmetric) throw_unsupported("symmetric KKT conditions need a symmetric class");
  inst.phi().admit(phi_star);
  const auto neg = phi_star.negated();
  if (!neg) throw_unsupported("-phi* is not representable");
  if (x_star.dim() != inst.dim()) throw_invalid("x* has the wrong dimension");

  KktCertificate c;
  c.variant = KktVariant::symmetric;
  c.x_star = x_star;
  c.phi_star = phi_star;
  const ExtendedValue fx = inst.f()(x_star);
  if (!fx.is_finite()) throw_invalid("x* is not in dom f");
  c.cond1 = is_subgradient(inst.f(), x_star, *neg, inst.box(), cfg);
  c.cond2 = dual_side(inst, x_star, phi_star, cfg, c.notes);
  c.primal_value = fx + inst.g()(x_star);
  c.dual_value = -phi_conjugate(inst.f(), *neg, inst.box(), cfg).value -
                 phi_conjugate(inst.g(), phi_star, inst.box(), cfg).value;
  finish(c, inst, cfg);
  return c;
}

KktCertificate verify_kkt_lsc(const ProblemInstance& inst, const Point& x_star, const Elementary& phi_star,
                              const SearchConfig& cfg) {
  if (inst.phi().kind() != PhiKind::lsc_quadratic) throw_unsupported("lsc KKT conditions need the lsc-quadratic class");
  if (phi_star.a() < 0) throw_invalid("a* must be >= 0");
  if (x_star.dim() != inst.dim()) throw_invalid("x* has the wrong dimension");
  const Elementary phi0 = phi_star.with_constant(0.0);

  KktCertificate c;
  c.variant = KktVariant::lsc;
  c.x_star = x_star;
  c.phi_star = phi0;
  const ExtendedValue fx = inst.f()(x_star);
  if (!fx.is_finite()) throw_invalid("x* is not in dom f");
  const ProperFunction ftilde = inst.f().minus_quadratic(phi0.a());
  const Elementary lin(0.0, -phi0.v(), 0.0);
  c.cond1 = is_subgradient(ftilde, x_star, lin, inst.box(), cfg);
  c.cond2 = dual_side(inst, x_star, phi0, cfg, c.notes);
  c.primal_value = fx + inst.g()(x_star);
  c.dual_value = -phi_conjugate(ftilde, lin, inst.box(), cfg).value -
                 phi_conjugate(inst.g(), phi0, inst.box(), cfg).value;
  finish(c, inst, cfg);
  return c;
}

KktCertificate verify_kkt(const ProblemInstance& inst, const Point& x_star, const Elementary& phi_star,
                          const SearchConfig& cfg) {
  if (inst.phi().kind() == PhiKind::lsc_quadratic) return verify_kkt_lsc(inst, x_star, phi_star, cfg);
  return verify_kkt_symmetric(inst, x_star, phi_star, cfg);
}

std::optional<KktSearchResult> search_kkt_pair(const ProblemInstance& inst, std::size_t budget,
                                               const SearchConfig& cfg) {
  // x candidates: the primal argmin, then strict local minima of f + g on
  // the grid in increasing value.
  std::vector<Point> xs;
  const PrimalValue p = val_primal(inst, cfg);
  if (p.argmin && inst.f()(*p.argmin).is_finite()) xs.push_back(*p.argmin);
  {
    Grid grid(inst.box());
    std::vector<std::pair<double, Point>> local;
    const std::size_t n = grid.size();
    std::vector<ExtendedValue> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = inst.f()(grid.point(i)) + inst.g()(grid.point(i));
    if (inst.dim() == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!vals[i].is_finite()) continue;
        const bool left = i == 0 || vals[i] <= vals[i - 1];
        const bool right = i + 1 == n || vals[i] <= vals[i + 1];
        if (left && right) local.emplace_back(vals[i].value(), grid.point(i));
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        if (vals[i].is_finite()) local.emplace_back(vals[i].value(), grid.point(i));
    }
    std::stable_sort(local.begin(), local.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < local.size() && i < 8; ++i) {
      Extremum r =
          refine_extremum([&](const Point& x) { return inst.f()(x) + inst.g()(x); }, inst.box(), local[i].second,
                          cfg.refine_rounds, Sense::minimize);
      if (r.point) xs.push_back(*r.point);
    }
  }

  std::vector<Elementary> phis;
  const DualValue cd = val_cd(inst, cfg);
  if (cd.best) phis.push_back(*cd.best);
  if (auto pbox = inst.phi().parameter_box()) {
    Grid grid(*pbox);
    for (std::size_t i = 0; i < grid.size(); ++i) phis.push_back(inst.phi().from_parameters(grid.point(i)));
  } else {
    phis.push_back(Elementary::zero(inst.dim()));
  }
  const bool symmetric = inst.phi().kind() != PhiKind::lsc_quadratic;

  std::size_t examined = 0;
  for (const Point& x : xs) {
    const ExtendedValue primal = inst.f()(x) + inst.g()(x);
    if (!primal.is_finite()) continue;
    for (const Elementary& phi : phis) {
      if (examined >= budget) return std::nullopt;
      ++examined;
      // Cheap necessary condition first: the two objective values must meet.
      const ExtendedValue dual = lagrangian_inf(inst, phi, cfg);
      if (!dual.is_finite() || std::abs(dual.value() - primal.value()) > cfg.equality_tol) continue;
      KktCertificate cert = symmetric ? verify_kkt_symmetric(inst, x, phi, cfg) : verify_kkt_lsc(inst, x, phi, cfg);
      if (cert.optimal) return KktSearchResult{x, phi, std::move(cert), examined};
    }
  }
  return std::nullopt;
}

}  // namespace phiconv
