#pragma once

// Zero-duality-gap analysis: the intersection property, the condition
// 0 in cap_eps (d^eps f + d^eps g)(X), and the bridge between the two.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phiconv/duality.hpp"
#include "phiconv/subdifferential.hpp"

namespace phiconv {

struct IntersectionCertificate {
  bool holds = false;
  std::optional<double> t0;
  double alpha = 0.0;
  Quadric phi1, phi2;
  ExtendedValue min_over_x_at_t0 = ExtendedValue::neg_inf();
};

/// Exact minimum of a quadric over a box (the problem separates by axis).
ExtendedValue min_quadric_on_box(const Quadric& q, const BoxDomain& box);
/// Exact infimum of a quadric over the whole space.
ExtendedValue inf_quadric(const Quadric& q);

/// max over t of v(t) = min_box t*phi1 + (1-t)*phi2, compared with alpha.
/// v is concave in t; it is maximized by ternary search to 1e-10.
IntersectionCertificate check_intersection_property(const Quadric& phi1, const Quadric& phi2, double alpha,
                                                    const BoxDomain& box);
IntersectionCertificate check_intersection_property(const Elementary& phi1, const Elementary& phi2, double alpha,
                                                    const BoxDomain& box);
/// Same test with the infimum over the whole space.
IntersectionCertificate check_intersection_property_global(const Quadric& phi1, const Quadric& phi2, double alpha);

/// For every t on a grid of t_grid_size points and every box lattice point:
/// [t phi1 + (1-t) phi2 < alpha] misses [phi1 < alpha] or misses [phi2 < alpha].
bool check_intersection_direct(const Quadric& phi1, const Quadric& phi2, double alpha, const BoxDomain& box,
                               int t_grid_size);

struct CertifyOptions {
  std::vector<std::pair<Elementary, Elementary>> seeds;
  std::size_t budget = 100000;  // intersection checks per level
  int support_points = 9;       // per parameter axis for elementary minorants
};

struct ZeroGapCertificate {
  double alpha = 0.0;
  bool found = false;
  std::string phase;  // "seed", "single", "pair" or "inconclusive"
  std::optional<Elementary> psi1, psi2;
  std::optional<Elementary> support1, support2;
  std::optional<IntersectionCertificate> intersection;
  std::size_t checks = 0;
};

/// For each level alpha < val(LP): look for psi1, psi2 in the class and
/// elementary minorants of L(., psi_i) with the intersection property on X.
/// Not finding one is inconclusive. val_lp is computed when not supplied.
std::vector<ZeroGapCertificate> certify_zero_gap_via_intersection(const ProblemInstance& inst,
                                                                  const std::vector<double>& alphas,
                                                                  const CertifyOptions& opts = {},
                                                                  const SearchConfig& cfg = {},
                                                                  std::optional<ExtendedValue> val_lp = std::nullopt);

struct BuiWitness {
  Point x_bar;
  Elementary phi;  // phi in d^eps g(x_bar), -phi in d^eps f(x_bar)
};

struct BuiEpsResult {
  double epsilon = 0.0;
  bool found = false;
  std::optional<BuiWitness> witness;
};

struct BuiConditionResult {
  std::vector<double> epsilons;
  std::vector<BuiEpsResult> per_eps;
  bool overall = false;
  /// Smallest max(eps needed for g, eps needed for f) seen in the search.
  ExtendedValue best_residual = ExtendedValue::pos_inf();
};

std::vector<double> default_eps_list();

BuiConditionResult check_bui_condition(const ProblemInstance& inst, const std::vector<double>& eps_list,
                                       const SearchConfig& cfg = {});

struct BridgeReport {
  BuiConditionResult bui;
  std::vector<ZeroGapCertificate> certificates;
  std::vector<double> alphas;
  bool condition1 = false;  // bui
  bool condition2 = false;  // every tested level certified
  ExtendedValue val_P, val_LP;
  bool equality_hypothesis = false;  // val_P = val_LP (= kappa)
  bool kappa_finite_above = false;
  bool hyp_convex = false, hyp_symmetric = false, hyp_additive = false, hyp_zero = false;
  bool applicable_2_to_1 = false, applicable_1_to_2 = false;
  bool exercised_2_to_1 = false, exercised_1_to_2 = false;
  bool contradiction = false;
  std::vector<std::string> discrepancies;
  std::vector<std::string> notes;
};

/// Evaluates both conditions, the hypotheses of each implication, and flags
/// any verdict pair that contradicts an applicable implication. With an
/// empty alpha list the levels val_LP - {0.5, 0.1, 0.01} are used.
BridgeReport zero_gap_bridge_report(const ProblemInstance& inst, const std::vector<double>& alphas,
                                     const CertifyOptions& opts = {}, const std::vector<double>& eps_list = {},
                                     const SearchConfig& cfg = {});

}  // namespace phiconv
