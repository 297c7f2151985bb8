#include "phiconv/subdifferential.hpp"

namespace phiconv {

namespace {

double finite_xbar_value(const ProperFunction& f, const Point& xbar) {
  const ExtendedValue fx = f(xbar);
  if (!fx.is_finite()) throw_invalid("xbar is not in dom f");
  return fx.value();
}

// Walk outwards along the coordinate axes until the violation shows up.
// Used when the sup is +inf and no attaining point exists.
std::optional<Point> ray_witness(const std::function<ExtendedValue(const Point&)>& viol, const Point& xbar,
                                 double tol) {
  for (std::size_t k = 0; k < xbar.dim(); ++k) {
    for (double sign : {1.0, -1.0}) {
      double t = 1.0;
      for (int i = 0; i < 64; ++i, t *= 2.0) {
        Point x = xbar;
        x[k] += sign * t;
        if (viol(x) > ExtendedValue(tol)) return x;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

SubgradientCertificate is_eps_subgradient(const ProperFunction& f, const Point& xbar, const Elementary& phi,
                                          double eps, const BoxDomain& box, const SearchConfig& cfg) {
  if (!(eps >= 0) || !std::isfinite(eps)) throw_invalid("epsilon must be >= 0");
  if (phi.dim() != f.dim()) throw_invalid("is_eps_subgradient: dimension mismatch");
  const double fx = finite_xbar_value(f, xbar);
  // The constant of phi cancels; drop it so the verdict cannot depend on it.
  const Elementary phi0 = phi.with_constant(0.0);
  Quadric q = phi0.as_quadric();
  q.q0 = fx - phi0(xbar) - eps;

  ConjugateValue s = sup_quadric_minus(f, q, box, cfg);
  SubgradientCertificate cert;
  cert.epsilon = eps;
  cert.tolerance = cfg.inequality_tol;
  cert.method = s.method;
  cert.worst_violation = s.value.to_double();
  cert.holds = s.value <= ExtendedValue(cfg.inequality_tol);
  if (!cert.holds) {
    if (s.attaining_point) {
      cert.witness_point = s.attaining_point;
    } else {
      auto viol = [&](const Point& x) -> ExtendedValue {
        ExtendedValue v = f(x);
        if (v.is_pos_inf()) return ExtendedValue::neg_inf();
        return q(x) - v.value();
      };
      cert.witness_point = ray_witness(viol, xbar, cfg.inequality_tol);
    }
  }
  return cert;
}

SubgradientCertificate is_subgradient(const ProperFunction& f, const Point& xbar, const Elementary& phi,
                                      const BoxDomain& box, const SearchConfig& cfg) {
  return is_eps_subgradient(f, xbar, phi, 0.0, box, cfg);
}

bool eps_subgradient_via_conjugate(const ProperFunction& f, const Point& xbar, const Elementary& phi, double eps,
                                   const BoxDomain& box, const SearchConfig& cfg) {
  if (!(eps >= 0) || !std::isfinite(eps)) throw_invalid("epsilon must be >= 0");
  const double fx = finite_xbar_value(f, xbar);
  const Elementary phi0 = phi.with_constant(0.0);
  const ExtendedValue conj = phi_conjugate(f, phi0, box, cfg).value;
  return ExtendedValue(fx) + conj - ExtendedValue(phi0(xbar) + eps) <= ExtendedValue(cfg.inequality_tol);
}

SubgradientCertificate is_dual_subgradient(const ProperFunction& f, const Point& xbar, const Elementary& phibar,
                                           const PhiClass& phi, const BoxDomain& box, const SearchConfig& cfg) {
  if (xbar.dim() != f.dim()) throw_invalid("is_dual_subgradient: dimension mismatch");
  const Elementary bar0 = phibar.with_constant(0.0);
  const ConjugateValue cbar = phi_conjugate(f, bar0, box, cfg);
  if (!cbar.value.is_finite()) throw_invalid("is_dual_subgradient: f*(phibar) is not finite");
  const double dbar = cbar.value.value() - bar0(xbar);

  auto d = [&](const Elementary& e) -> ExtendedValue {
    return phi_conjugate(f, e, box, cfg).value - ExtendedValue(e(xbar));
  };
  std::vector<Elementary> extras;
  if (phi.contains(bar0)) extras.push_back(bar0);
  ClassExtremum m = optimize_over_class(phi, d, Sense::minimize, cfg.refine_rounds, extras);

  SubgradientCertificate cert;
  cert.tolerance = cfg.inequality_tol;
  cert.method = cbar.method;
  cert.worst_violation = (ExtendedValue(dbar) - m.value).to_double();
  cert.holds = cert.worst_violation <= cfg.inequality_tol;
  if (!cert.holds) cert.witness_elementary = m.best;
  return cert;
}

YoungTriple young_triple(const ProperFunction& f, const Point& xbar, const Elementary& phibar, const PhiClass& phi,
                         const BoxDomain& box, const SearchConfig& cfg) {
  YoungTriple y;
  const double fx = finite_xbar_value(f, xbar);
  const ExtendedValue conj = phi_conjugate(f, phibar, box, cfg).value;
  y.young_equality = conj.is_finite() && std::abs(fx + conj.value() - phibar(xbar)) <= cfg.equality_tol;
  y.subgradient = is_subgradient(f, xbar, phibar, box, cfg).holds;
  y.dual_subgradient = conj.is_finite() && is_dual_subgradient(f, xbar, phibar, phi, box, cfg).holds;
  const ExtendedValue bic = BiconjugateEvaluator(f, phi, box, cfg, {phibar})(xbar).value;
  y.phi_convex_at_point = bic.is_finite() && std::abs(bic.value() - fx) <= cfg.equality_tol;
  const bool agree = y.young_equality == y.subgradient && y.subgradient == y.dual_subgradient;
  y.coherent = !y.phi_convex_at_point || agree;
  return y;
}

}  // namespace phiconv
