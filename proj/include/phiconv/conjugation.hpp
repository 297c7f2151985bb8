#pragma once

// Phi-conjugates, left conjugates and biconjugates.

#include <optional>
#include <vector>

#include "phiconv/functions.hpp"

namespace phiconv {

enum class Method { closed_form, grid_oracle };

std::string to_string(Method m);

struct ConjugateValue {
  ExtendedValue value;
  std::optional<Point> attaining_point;  // absent when the value is infinite
  Method method;
};

/// sup_x q(x) - f(x). Exact vertex clamping over the whole (possibly
/// unbounded) domain for piecewise quadratics; otherwise a refined grid scan
/// on the box with the unboundedness sentinel.
ConjugateValue sup_quadric_minus(const ProperFunction& f, const Quadric& q, const BoxDomain& box,
                                 const SearchConfig& cfg = {});
ConjugateValue sup_quadric_minus_oracle(const ProperFunction& f, const Quadric& q, const BoxDomain& box,
                                        const SearchConfig& cfg = {});

/// f*(phi) = sup_x phi(x) - f(x).
ConjugateValue phi_conjugate(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                             const SearchConfig& cfg = {});
/// *f(phi) = sup_x -f(x) - phi(x).
ConjugateValue left_conjugate(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                              const SearchConfig& cfg = {});
ConjugateValue phi_conjugate_oracle(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                                    const SearchConfig& cfg = {});
ConjugateValue left_conjugate_oracle(const ProperFunction& f, const Elementary& phi, const BoxDomain& box,
                                     const SearchConfig& cfg = {});

struct BiconjugateValue {
  ExtendedValue value;
  std::optional<Elementary> best;
};

/// f**(x) = sup over the truncated class of phi(x) - f*(phi). The conjugate
/// table over the parameter grid is built once, so evaluating many x is
/// cheap. Refinement in parameter space only runs for closed-form f.
class BiconjugateEvaluator {
 public:
  BiconjugateEvaluator(ProperFunction f, PhiClass phi, BoxDomain box, SearchConfig cfg = {},
                       const std::vector<Elementary>& extras = {});

  BiconjugateValue operator()(const Point& x) const;
  std::size_t feasible_count() const { return table_.size(); }

 private:
  ProperFunction f_;
  PhiClass phi_;
  BoxDomain box_;
  SearchConfig cfg_;
  std::vector<std::pair<Elementary, double>> table_;
};

ExtendedValue biconjugate(const ProperFunction& f, const Point& x, const PhiClass& phi, const BoxDomain& box,
                          const SearchConfig& cfg = {});

/// f(x) + f*(phi) >= phi(x) - 1e-9. Throws invalid-argument off dom f.
bool fenchel_moreau_check(const ProperFunction& f, const Elementary& phi, const Point& x, const BoxDomain& box,
                          const SearchConfig& cfg = {});

/// f** <= f + 1e-6 at every grid point of the box.
bool biconjugate_leq_f(const ProperFunction& f, const PhiClass& phi, const BoxDomain& box,
                       const SearchConfig& cfg = {});

}  // namespace phiconv
