#pragma once

// Phi-KKT verification for symmetric classes and the (0, -w*) form used for
// the lsc-quadratic class.

#include <optional>
#include <string>
#include <vector>

#include "phiconv/duality.hpp"
#include "phiconv/subdifferential.hpp"

namespace phiconv {

enum class KktVariant { symmetric, lsc };

struct KktCertificate {
  KktVariant variant = KktVariant::symmetric;
  Point x_star;
  Elementary phi_star = Elementary::zero(1);
  SubgradientCertificate cond1;  // -phi* in d f(x*)   |  (0, -w*) in d f~(x*)
  SubgradientCertificate cond2;  // x* in d_X g*(phi*)
  ExtendedValue primal_value;
  ExtendedValue dual_value;
  bool values_agree = false;
  bool optimal = false;
  /// optimal <=> (cond1 and cond2), as expected for Phi-convex data.
  bool conditions_consistent = true;
  bool f_phi_convex_at_x = false;
  bool g_phi_convex_at_x = false;
  double a_max = 0.0, v_max = 0.0;  // parameter box of the dual-side search
  std::vector<std::string> notes;
};

KktCertificate verify_kkt_symmetric(const ProblemInstance& inst, const Point& x_star, const Elementary& phi_star,
                                    const SearchConfig& cfg = {});
KktCertificate verify_kkt_lsc(const ProblemInstance& inst, const Point& x_star, const Elementary& phi_star,
                              const SearchConfig& cfg = {});
/// Dispatches on the class kind.
KktCertificate verify_kkt(const ProblemInstance& inst, const Point& x_star, const Elementary& phi_star,
                          const SearchConfig& cfg = {});

struct KktSearchResult {
  Point x;
  Elementary phi;
  KktCertificate certificate;
  std::size_t pairs_examined = 0;
};

/// First optimal pair among x candidates (the primal argmin, then grid local
/// minima of f + g) and phi candidates (the best conjugate-dual element,
/// then the class grid), within budget pairs.
std::optional<KktSearchResult> search_kkt_pair(const ProblemInstance& inst, std::size_t budget,
                                               const SearchConfig& cfg = {});

}  // namespace phiconv
