#pragma once

// Membership tests for Phi-subgradients, Phi-epsilon-subgradients and dual
// subgradients, plus the Young-equality triple.

#include <optional>

#include "phiconv/conjugation.hpp"

namespace phiconv {

struct SubgradientCertificate {
  bool holds = false;
  /// Largest violation of the defining inequality found (+inf allowed).
  double worst_violation = 0.0;
  std::optional<Point> witness_point;             // primal tests
  std::optional<Elementary> witness_elementary;   // dual test
  double epsilon = 0.0;
  double tolerance = 0.0;
  Method method = Method::closed_form;
};

/// f(x) - f(xbar) >= phi(x) - phi(xbar) - eps for all x. For piecewise
/// quadratics the check runs over the whole domain; otherwise on the box
/// with the sentinel expansions.
SubgradientCertificate is_eps_subgradient(const ProperFunction& f, const Point& xbar, const Elementary& phi,
                                          double eps, const BoxDomain& box, const SearchConfig& cfg = {});
SubgradientCertificate is_subgradient(const ProperFunction& f, const Point& xbar, const Elementary& phi,
                                      const BoxDomain& box, const SearchConfig& cfg = {});

/// f(xbar) + f*(phi) <= phi(xbar) + eps.
bool eps_subgradient_via_conjugate(const ProperFunction& f, const Point& xbar, const Elementary& phi, double eps,
                                   const BoxDomain& box, const SearchConfig& cfg = {});

/// xbar in d_X f*(phibar): f*(phi) - f*(phibar) >= phi(xbar) - phibar(xbar)
/// for every phi in the truncated class. "holds" means no violation found.
SubgradientCertificate is_dual_subgradient(const ProperFunction& f, const Point& xbar, const Elementary& phibar,
                                           const PhiClass& phi, const BoxDomain& box, const SearchConfig& cfg = {});

struct YoungTriple {
  bool young_equality = false;    // f(xbar) + f*(phibar) = phibar(xbar)
  bool subgradient = false;       // phibar in d f(xbar)
  bool dual_subgradient = false;  // xbar in d_X f*(phibar)
  bool phi_convex_at_point = false;
  bool coherent = true;  // false only if f looks Phi-convex at xbar and the verdicts disagree
};

YoungTriple young_triple(const ProperFunction& f, const Point& xbar, const Elementary& phibar, const PhiClass& phi,
                         const BoxDomain& box, const SearchConfig& cfg = {});

}  // namespace phiconv
