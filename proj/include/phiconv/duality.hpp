#pragma once

// Perturbation, coupling, the Phi-Lagrangian and the chain of dual values.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phiconv/conjugation.hpp"

namespace phiconv {

/// Minimize f + g over X, searched on the box with elementary class phi.
class ProblemInstance {
 public:
  ProblemInstance(ProperFunction f, ProperFunction g, BoxDomain box, PhiClass phi, std::string label = "");

  const ProperFunction& f() const { return f_; }
  const ProperFunction& g() const { return g_; }
  const BoxDomain& box() const { return box_; }
  const PhiClass& phi() const { return phi_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return box_.dim(); }

  ProblemInstance with_box(BoxDomain box) const { return {f_, g_, std::move(box), phi_, label_}; }
  ProblemInstance with_phi(PhiClass phi) const { return {f_, g_, box_, std::move(phi), label_}; }
  ProblemInstance with_functions(ProperFunction f, ProperFunction g) const {
    return {std::move(f), std::move(g), box_, phi_, label_};
  }

 private:
  ProperFunction f_;
  ProperFunction g_;
  BoxDomain box_;
  PhiClass phi_;
  std::string label_;
};

/// p(x, y) = f(x) + g(x + y).
ExtendedValue perturbation(const ProblemInstance& inst, const Point& x, const Point& y);

/// c((phi, psi), (x, y)) = phi(x) + psi(x + y) - psi(x).
double coupling(const Elementary& phi, const Elementary& psi, const Point& x, const Point& y);

/// p*(0, phi) = *f(phi) + g*(phi).
ExtendedValue perturbation_conjugate_zero(const ProblemInstance& inst, const Elementary& phi,
                                          const SearchConfig& cfg = {});
/// sup over the two lattices of c((0, phi), (x, y)) - p(x, y); no refinement.
ExtendedValue perturbation_conjugate_direct(const ProblemInstance& inst, const Elementary& phi,
                                            const BoxDomain& x_box, const BoxDomain& y_box);

struct LagrangianValue {
  ExtendedValue value;
  bool feasible;  // false when g*(phi) = +inf, i.e. L(., phi) is -inf throughout
};

/// L(x, phi) = f(x) + phi(x) - g*(phi).
LagrangianValue lagrangian(const ProblemInstance& inst, const Point& x, const Elementary& phi,
                           const SearchConfig& cfg = {});
/// inf_x L(x, phi) = -*f(phi) - g*(phi).
ExtendedValue lagrangian_inf(const ProblemInstance& inst, const Elementary& phi, const SearchConfig& cfg = {});

struct PrimalValue {
  ExtendedValue value;
  std::optional<Point> argmin;
  Method method;
};

PrimalValue val_primal(const ProblemInstance& inst, const SearchConfig& cfg = {});

/// inf_x f(x) + g**(x). extras join the biconjugate's conjugate table.
PrimalValue val_lagrangian_primal(const ProblemInstance& inst, const SearchConfig& cfg = {},
                                  const std::vector<Elementary>& extras = {},
                                  const std::optional<PrimalValue>& primal = std::nullopt);

struct DualValue {
  ExtendedValue value;
  std::optional<Elementary> best;
};

DualValue val_lagrangian_dual(const ProblemInstance& inst, const SearchConfig& cfg = {},
                              const std::vector<Elementary>& extras = {});
DualValue val_cd(const ProblemInstance& inst, const SearchConfig& cfg = {}, const std::vector<Elementary>& extras = {});
/// sup over phi with -phi in the class of -f*(-phi) - g*(phi).
DualValue val_cd_sym(const ProblemInstance& inst, const SearchConfig& cfg = {});

struct IcdValue {
  ExtendedValue value;
  /// (phi1, phi2) with phi1 + phi2 = 0; the value is -f*(phi2) - g*(phi1).
  std::optional<std::pair<Elementary, Elementary>> pair;
};
IcdValue val_icd(const ProblemInstance& inst, const SearchConfig& cfg = {});

struct DualityReport {
  std::string label;
  ExtendedValue val_P, val_LP, val_LD, val_CD, val_CD_sym, val_ICD;
  std::optional<Point> argmin_P;
  std::optional<Point> argmin_LP;
  std::optional<Elementary> best_dual_elementary;
  std::optional<Elementary> best_cd_sym_elementary;
  std::optional<std::pair<Elementary, Elementary>> best_icd_pair;
  ExtendedValue gap_CD, gap_ICD;
  bool chain_ok = true;
  std::vector<std::string> violations;
  std::map<std::string, std::string> methods;
  std::map<std::string, std::string> notes;
  PhiKind kind = PhiKind::lsc_quadratic;
  double a_max = 0, v_max = 0;
  int a_points = 0, v_points = 0;
  double tolerance = 0;
};

/// x - y with equal infinities mapped to 0.
ExtendedValue value_gap(ExtendedValue x, ExtendedValue y);

DualityReport duality_chain_report(const ProblemInstance& inst, const SearchConfig& cfg = {});

}  // namespace phiconv
