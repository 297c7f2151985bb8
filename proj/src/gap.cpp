#include "phiconv/gap.hpp"

#include <algorithm>
#include <map>

namespace phiconv {

namespace {

// Coefficients below this are treated as exact zeros when deciding whether
// a combination has a finite infimum on the whole space.
constexpr double kZero = 1e-12;

Quadric mix(double t, const Quadric& a, const Quadric& b) { return t * a + (1 - t) * b; }

template <class V>
double ternary_max(V&& v, double lo, double hi) {
  double a = lo, b = hi;
  while (b - a > 1e-10) {
    const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
    if (v(m1) < v(m2))
      a = m1;
    else
      b = m2;
  }
  return 0.5 * (a + b);
}

template <class V>
IntersectionCertificate best_level(V&& v, const std::vector<double>& candidates, const Quadric& p1, const Quadric& p2,
                                   double alpha) {
  IntersectionCertificate c;
  c.alpha = alpha;
  c.phi1 = p1;
  c.phi2 = p2;
  for (double t : candidates) {
    if (!(t >= 0.0 && t <= 1.0)) continue;
    const ExtendedValue val = v(t);
    if (!c.t0 || val > c.min_over_x_at_t0) {
      c.t0 = t;
      c.min_over_x_at_t0 = val;
    }
  }
  c.holds = c.min_over_x_at_t0 >= ExtendedValue(alpha - 1e-9);
  return c;
}

}  // namespace

ExtendedValue min_quadric_on_box(const Quadric& q, const BoxDomain& box) {
  if (q.dim() != box.dim()) throw_invalid("min_quadric_on_box: dimension mismatch");
  double acc = q.q0;
  for (std::size_t k = 0; k < box.dim(); ++k)
    acc += inf_quadratic_on_interval(q.q2, q.q1[k], 0.0, box.lower()[k], box.upper()[k]).value.value();
  return acc;
}

ExtendedValue inf_quadric(const Quadric& q) {
  const double n2 = q.q1.squared_norm();
  if (q.q2 > kZero) return q.q0 - n2 / (4 * q.q2);
  if (q.q2 >= -kZero && std::sqrt(n2) <= kZero * (1 + std::abs(q.q0))) return q.q0;
  return ExtendedValue::neg_inf();
}

IntersectionCertificate check_intersection_property(const Quadric& phi1, const Quadric& phi2, double alpha,
                                                    const BoxDomain& box) {
  if (phi1.dim() != box.dim() || phi2.dim() != box.dim()) throw_invalid("intersection check: dimension mismatch");
  auto v = [&](double t) { return min_quadric_on_box(mix(t, phi1, phi2), box); };
  const double tm = ternary_max(v, 0.0, 1.0);
  return best_level(v, {1.0, 0.0, tm}, phi1, phi2, alpha);
}

IntersectionCertificate check_intersection_property(const Elementary& phi1, const Elementary& phi2, double alpha,
                                                    const BoxDomain& box) {
  return check_intersection_property(phi1.as_quadric(), phi2.as_quadric(), alpha, box);
}

IntersectionCertificate check_intersection_property_global(const Quadric& phi1, const Quadric& phi2, double alpha) {
  if (phi1.dim() != phi2.dim()) throw_invalid("intersection check: dimension mismatch");
  auto v = [&](double t) { return inf_quadric(mix(t, phi1, phi2)); };
  std::vector<double> cand{1.0, 0.0};
  // The quadratic coefficient is affine in t; v is finite only where it is
  // positive, or where it and the linear part both vanish.
  const double a = phi1.q2, b = phi2.q2;
  double lo = 0.0, hi = 1.0;
  if (a != b) {
    const double root = b / (b - a);
    if (root >= 0.0 && root <= 1.0) cand.push_back(root);
    if (a > b)
      lo = std::clamp(root, 0.0, 1.0);
    else
      hi = std::clamp(root, 0.0, 1.0);
  }
  const Point d = phi1.q1 - phi2.q1;
  for (std::size_t k = 0; k < d.dim(); ++k) {
    if (d[k] != 0.0) {
      const double t = -phi2.q1[k] / d[k];
      cand.push_back(t);
      break;
    }
  }
  if (lo < hi && (a > 0 || b > 0)) cand.push_back(ternary_max(v, lo, hi));
  return best_level(v, cand, phi1, phi2, alpha);
}

bool check_intersection_direct(const Quadric& phi1, const Quadric& phi2, double alpha, const BoxDomain& box,
                               int t_grid_size) {
  if (t_grid_size < 2) throw_invalid("t grid needs at least 2 points");
  Grid grid(box);
  std::vector<double> v1(grid.size()), v2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    v1[i] = phi1(x);
    v2[i] = phi2(x);
  }
  for (int j = 0; j < t_grid_size; ++j) {
    const double t = static_cast<double>(j) / (t_grid_size - 1);
    bool meets1 = false, meets2 = false;
    for (std::size_t i = 0; i < grid.size() && !(meets1 && meets2); ++i) {
      const double m = t * v1[i] + (1 - t) * v2[i];
      if (m >= alpha) continue;
      if (v1[i] < alpha) meets1 = true;
      if (v2[i] < alpha) meets2 = true;
    }
    if (meets1 && meets2) return false;
  }
  return true;
}

namespace {

// Elementary minorants of L(., psi): the infimum as a constant, and
// -a|x|^2 + <v, x> + c with c = inf (L - (-a|x|^2 + <v, x>)) on a coarse
// (a, v) grid.
class SupportCache {
 public:
  SupportCache(const ProblemInstance& inst, const SearchConfig& cfg, int points)
      : inst_(inst), cfg_(cfg), points_(points) {}

  struct Entry {
    ExtendedValue inf_l = ExtendedValue::neg_inf();
    bool nonempty = false;  // g*(psi) finite
    bool minorants_ready = false;
    std::vector<Elementary> minorants;
  };

  Entry& get(const Elementary& psi, bool need_minorants) {
    const Key key = make_key(psi);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      Entry e;
      const ExtendedValue gs = phi_conjugate(inst_.g(), psi, inst_.box(), cfg_).value;
      e.nonempty = gs.is_finite();
      if (e.nonempty) e.inf_l = -left_conjugate(inst_.f(), psi, inst_.box(), cfg_).value - gs;
      it = cache_.emplace(key, std::move(e)).first;
    }
    Entry& e = it->second;
    if (need_minorants && !e.minorants_ready) {
      e.minorants_ready = true;
      if (e.nonempty) build_minorants(psi, e);
    }
    return e;
  }

  std::vector<Elementary> candidates(const Elementary& psi, double alpha, bool with_minorants) {
    Entry& e = get(psi, with_minorants);
    std::vector<Elementary> out;
    if (!e.nonempty) return out;
    const std::size_t n = inst_.dim();
    if (ExtendedValue(alpha) <= e.inf_l) out.push_back(Elementary::constant(n, alpha));
    if (e.inf_l.is_finite() && e.inf_l.value() != alpha) out.push_back(Elementary::constant(n, e.inf_l.value()));
    if (with_minorants) out.insert(out.end(), e.minorants.begin(), e.minorants.end());
    return out;
  }

 private:
  using Key = std::vector<double>;
  static Key make_key(const Elementary& e) {
    Key k{e.a(), e.c()};
    for (double x : e.v().coords()) k.push_back(x);
    return k;
  }

  void build_minorants(const Elementary& psi, Entry& e) {
    const PhiClass& phi = inst_.phi();
    const ExtendedValue gs = phi_conjugate(inst_.g(), psi, inst_.box(), cfg_).value;
    const PhiClass coarse = phi.with_grid(points_, points_);
    auto pbox = coarse.parameter_box();
    if (!pbox) return;
    Grid grid(*pbox);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Elementary base = coarse.from_parameters(grid.point(i));
      const Quadric q = base.as_quadric() - psi.as_quadric();
      const ExtendedValue s = sup_quadric_minus(inst_.f(), q, inst_.box(), cfg_).value;
      const ExtendedValue c = -s - gs;
      if (!c.is_finite()) continue;
      e.minorants.emplace_back(base.a(), base.v(), c.value());
    }
  }

  const ProblemInstance& inst_;
  SearchConfig cfg_;
  int points_;
  std::map<Key, Entry> cache_;
};

}  // namespace

std::vector<ZeroGapCertificate> certify_zero_gap_via_intersection(const ProblemInstance& inst,
                                                                  const std::vector<double>& alphas,
                                                                  const CertifyOptions& opts, const SearchConfig& cfg,
                                                                  std::optional<ExtendedValue> val_lp) {
  if (!val_lp) {
    const DualValue cd = val_cd(inst, cfg);
    std::vector<Elementary> extras;
    if (cd.best) extras.push_back(*cd.best);
    val_lp = val_lagrangian_primal(inst, cfg, extras).value;
  }
  for (double a : alphas) {
    if (!std::isfinite(a)) throw_invalid("alpha levels must be finite");
    if (!(ExtendedValue(a) < *val_lp))
      throw_invalid("alpha = " + ExtendedValue(a).to_string() + " is not below val(LP) = " + val_lp->to_string());
  }
  for (const auto& [p1, p2] : opts.seeds) {
    inst.phi().admit(p1);
    inst.phi().admit(p2);
  }

  SupportCache cache(inst, cfg, opts.support_points);
  std::vector<Elementary> class_grid;
  if (auto pbox = inst.phi().parameter_box()) {
    Grid grid(*pbox);
    for (std::size_t i = 0; i < grid.size(); ++i) class_grid.push_back(inst.phi().from_parameters(grid.point(i)));
  } else {
    class_grid.push_back(Elementary::zero(inst.dim()));
  }

  std::vector<ZeroGapCertificate> out;
  for (double alpha : alphas) {
    ZeroGapCertificate cert;
    cert.alpha = alpha;
    cert.phase = "inconclusive";

    // Returns true when the certificate is settled (found or out of budget).
    auto try_pair = [&](const Elementary& psi1, const Elementary& psi2, bool minorants, const char* phase) {
      const auto s1 = cache.candidates(psi1, alpha, minorants);
      if (s1.empty()) return false;
      const auto s2 = cache.candidates(psi2, alpha, minorants);
      for (const auto& a : s1) {
        for (const auto& b : s2) {
          if (cert.checks >= opts.budget) return true;
          ++cert.checks;
          IntersectionCertificate ic = check_intersection_property_global(a.as_quadric(), b.as_quadric(), alpha);
          if (ic.holds) {
            cert.found = true;
            cert.phase = phase;
            cert.psi1 = psi1;
            cert.psi2 = psi2;
            cert.support1 = a;
            cert.support2 = b;
            cert.intersection = ic;
            return true;
          }
        }
      }
      return false;
    };

    bool done = false;
    for (const auto& [p1, p2] : opts.seeds) {
      if ((done = try_pair(p1, p2, true, "seed"))) break;
    }
    for (std::size_t i = 0; !done && i < class_grid.size(); ++i) done = try_pair(class_grid[i], class_grid[i], false, "single");
    // Pairs (i, j), i < j, by increasing i + j.
    const std::size_t n = class_grid.size();
    for (std::size_t s = 1; !done && s + 1 < 2 * n; ++s) {
      for (std::size_t i = (s + 1 > n ? s + 1 - n : 0); !done && i < n && i < s - i; ++i)
        done = try_pair(class_grid[i], class_grid[s - i], true, "pair");
    }
    out.push_back(std::move(cert));
  }
  return out;
}

std::vector<double> default_eps_list() { return {1.0, 0.1, 0.01, 0.001}; }

BuiConditionResult check_bui_condition(const ProblemInstance& inst, const std::vector<double>& eps_list,
                                       const SearchConfig& cfg) {
  const PhiFlags& fl = inst.phi().flags();
  if (!fl.contains_zero || !fl.additive)
    throw_unsupported("the epsilon-subdifferential sum condition needs 0 in the class and closure under addition");
  BuiConditionResult res;
  res.epsilons = eps_list.empty() ? default_eps_list() : eps_list;
  for (double e : res.epsilons)
    if (!(e >= 0) || !std::isfinite(e)) throw_invalid("epsilon values must be >= 0");

  // Zero-sum pairs force a = 0, so phi ranges over the affine part.
  const PhiClass sub = inst.phi().affine_subclass();
  const BoxDomain& box = inst.box();
  struct Row {
    Elementary phi;
    double gs, fs;
  };
  std::vector<Row> rows;
  auto add_row = [&](const Elementary& phi) {
    const ExtendedValue gs = phi_conjugate(inst.g(), phi, box, cfg).value;
    if (!gs.is_finite()) return;
    const ExtendedValue fs = phi_conjugate(inst.f(), *phi.negated(), box, cfg).value;
    if (!fs.is_finite()) return;
    rows.push_back({phi, gs.value(), fs.value()});
  };
  if (auto pbox = sub.parameter_box()) {
    Grid pg(*pbox);
    for (std::size_t i = 0; i < pg.size(); ++i) add_row(sub.from_parameters(pg.point(i)));
  } else {
    add_row(Elementary::zero(inst.dim()));
  }

  // Residual: the smallest eps for which both memberships hold at xbar.
  auto residual = [&](const Point& x, const Elementary& phi, double gs, double fs) -> ExtendedValue {
    const ExtendedValue gx = inst.g()(x), fx = inst.f()(x);
    if (!gx.is_finite() || !fx.is_finite()) return ExtendedValue::pos_inf();
    const double vx = phi(x);
    return std::max(gs + gx.value() - vx, fs + fx.value() + vx);
  };

  std::optional<BuiWitness> best;
  Grid xg(box);
  for (std::size_t i = 0; i < xg.size(); ++i) {
    const Point x = xg.point(i);
    if (!inst.g()(x).is_finite() || !inst.f()(x).is_finite()) continue;
    for (const Row& r : rows) {
      const ExtendedValue m = residual(x, r.phi, r.gs, r.fs);
      if (m < res.best_residual) {
        res.best_residual = m;
        best = BuiWitness{x, r.phi};
      }
    }
  }

  if (best && res.best_residual.is_finite() && sub.parameter_box()) {
    const std::size_t n = inst.dim();
    const bool closed = inst.f().closed_form() && inst.g().closed_form();
    const BoxDomain vbox = *sub.parameter_box();
    if (closed) {
      // Joint refinement in (xbar, v).
      Point lo = Point::zeros(2 * n), hi = Point::zeros(2 * n), seed = Point::zeros(2 * n);
      std::vector<int> counts;
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = box.lower()[k];
        hi[k] = box.upper()[k];
        seed[k] = best->x_bar[k];
        counts.push_back(box.count(k));
      }
      for (std::size_t k = 0; k < n; ++k) {
        lo[n + k] = vbox.lower()[k];
        hi[n + k] = vbox.upper()[k];
        seed[n + k] = best->phi.v()[k];
        counts.push_back(vbox.count(k));
      }
      const BoxDomain joint(lo, hi, counts);
      auto h = [&](const Point& p) -> ExtendedValue {
        Point x = Point::zeros(n), v = Point::zeros(n);
        for (std::size_t k = 0; k < n; ++k) {
          x[k] = p[k];
          v[k] = p[n + k];
        }
        const Elementary phi(0.0, v, 0.0);
        const ExtendedValue gs = phi_conjugate(inst.g(), phi, box, cfg).value;
        const ExtendedValue fs = phi_conjugate(inst.f(), *phi.negated(), box, cfg).value;
        if (!gs.is_finite() || !fs.is_finite()) return ExtendedValue::pos_inf();
        return residual(x, phi, gs.value(), fs.value());
      };
      Extremum r = refine_extremum(h, joint, seed, cfg.refine_rounds, Sense::minimize);
      if (r.value < res.best_residual) {
        res.best_residual = r.value;
        Point x = Point::zeros(n), v = Point::zeros(n);
        for (std::size_t k = 0; k < n; ++k) {
          x[k] = (*r.point)[k];
          v[k] = (*r.point)[n + k];
        }
        best = BuiWitness{x, Elementary(0.0, v, 0.0)};
      }
    } else {
      // Grid-oracle conjugates are costly; refine xbar only, v fixed.
      const Elementary phi = best->phi;
      const double gs = phi_conjugate(inst.g(), phi, box, cfg).value.value();
      const double fs = phi_conjugate(inst.f(), *phi.negated(), box, cfg).value.value();
      auto h = [&](const Point& x) { return residual(x, phi, gs, fs); };
      Extremum r = refine_extremum(h, box, best->x_bar, cfg.refine_rounds, Sense::minimize);
      if (r.value < res.best_residual) {
        res.best_residual = r.value;
        best->x_bar = *r.point;
      }
    }
  }

  res.overall = true;
  for (double eps : res.epsilons) {
    BuiEpsResult er;
    er.epsilon = eps;
    if (best && res.best_residual <= ExtendedValue(eps + cfg.inequality_tol)) {
      const bool g_ok = is_eps_subgradient(inst.g(), best->x_bar, best->phi, eps, box, cfg).holds;
      const bool f_ok = is_eps_subgradient(inst.f(), best->x_bar, *best->phi.negated(), eps, box, cfg).holds;
      er.found = g_ok && f_ok;
      if (er.found) er.witness = best;
    }
    res.overall = res.overall && er.found;
    res.per_eps.push_back(std::move(er));
  }
  return res;
}

BridgeReport zero_gap_bridge_report(const ProblemInstance& inst, const std::vector<double>& alphas,
                                     const CertifyOptions& opts, const std::vector<double>& eps_list,
                                     const SearchConfig& cfg) {
  BridgeReport r;
  const PhiFlags& fl = inst.phi().flags();
  r.hyp_convex = fl.convex_set;
  r.hyp_symmetric = fl.symmetric;
  r.hyp_additive = fl.additive;
  r.hyp_zero = fl.contains_zero;

  const PrimalValue p = val_primal(inst, cfg);
  const DualValue cd = val_cd(inst, cfg);
  std::vector<Elementary> extras;
  if (cd.best) extras.push_back(*cd.best);
  const PrimalValue lp = val_lagrangian_primal(inst, cfg, extras, p);
  r.val_P = p.value;
  r.val_LP = lp.value;
  r.kappa_finite_above = !lp.value.is_pos_inf();
  r.equality_hypothesis =
      p.value == lp.value || (p.value.is_finite() && lp.value.is_finite() &&
                              std::abs(p.value.value() - lp.value.value()) <= cfg.agreement_tol);

  if (fl.contains_zero && fl.additive) {
    r.bui = check_bui_condition(inst, eps_list, cfg);
    r.condition1 = r.bui.overall;
  } else {
    r.notes.push_back("condition (1) not evaluated: class lacks 0 or closure under addition");
  }

  if (lp.value.is_finite()) {
    std::vector<double> levels = alphas;
    if (levels.empty())
      for (double d : {0.5, 0.1, 0.01}) levels.push_back(lp.value.value() - d);
    for (double a : levels) {
      if (ExtendedValue(a) < lp.value)
        r.alphas.push_back(a);
      else
        r.notes.push_back("level " + ExtendedValue(a).to_string() + " skipped: not below val(LP)");
    }
    r.certificates = certify_zero_gap_via_intersection(inst, r.alphas, opts, cfg, lp.value);
    r.condition2 = !r.alphas.empty();
    for (const auto& c : r.certificates) r.condition2 = r.condition2 && c.found;
  } else if (lp.value.is_neg_inf()) {
    r.condition2 = true;
    r.notes.push_back("val(LP) = -inf: no level lies below it, condition (2) holds vacuously");
  } else {
    r.notes.push_back("val(LP) = +inf: the bridge needs it finite from above");
  }

  r.applicable_2_to_1 = r.kappa_finite_above && r.hyp_zero && r.hyp_convex && r.hyp_symmetric && r.equality_hypothesis;
  r.applicable_1_to_2 = r.kappa_finite_above && r.hyp_zero && r.hyp_additive;
  if (!r.hyp_symmetric) r.notes.push_back("(2) => (1) not applicable: the class is not symmetric");
  if (!r.hyp_convex) r.notes.push_back("(2) => (1) not applicable: the class is not convex");
  if (!r.equality_hypothesis) r.notes.push_back("(2) => (1) not applicable: val(P) != val(LP)");
  if (!r.hyp_additive) r.notes.push_back("(1) => (2) not applicable: the class is not closed under addition");
  r.exercised_2_to_1 = r.applicable_2_to_1 && r.condition2;
  r.exercised_1_to_2 = r.applicable_1_to_2 && r.condition1;
  if (r.exercised_2_to_1 && !r.condition1)
    r.discrepancies.push_back("(2) holds and (2) => (1) applies, yet no witness for (1) was found");
  if (r.exercised_1_to_2 && !r.condition2)
    r.discrepancies.push_back("(1) holds and (1) => (2) applies, yet some level has no certificate");
  r.contradiction = !r.discrepancies.empty();
  return r;
}

}  // namespace phiconv
