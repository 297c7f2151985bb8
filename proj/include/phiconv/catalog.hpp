#pragma once

// Named problem instances with their expected values.

#include <optional>
#include <string>
#include <vector>

#include "phiconv/gap.hpp"
#include "phiconv/kkt.hpp"

namespace phiconv {

/// Where an expected value comes from: "published" (a value stated for the
/// example in the literature), "derived" (computed by hand from closed
/// forms) or "trivial" (structural, e.g. an error path).
struct ExpectedValue {
  std::string quantity;
  ExtendedValue value;
  double tolerance = 0.0;
  std::string origin;
};

struct KktCheck {
  Point x;
  Elementary phi;
  bool optimal;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  ProblemInstance instance;
  std::vector<double> alphas;
  std::vector<std::pair<Elementary, Elementary>> seeds;
  std::vector<KktCheck> kkt_checks;
  std::vector<ExpectedValue> expected;
};

const std::vector<CatalogEntry>& catalog();
/// Throws invalid-argument for an unknown name.
const CatalogEntry& catalog_entry(const std::string& name);

struct RoundTripRow {
  std::string quantity;
  ExtendedValue expected;
  ExtendedValue observed;
  double tolerance = 0.0;
  std::string origin;
  bool pass = false;
};

/// Recomputes every expected quantity of the entry. Quantities: val_P,
/// val_LP, val_LD, val_CD, val_CD_sym, val_ICD, chain_ok, bui_overall,
/// certificates_found, kkt_optimal[i], kkt_primal[i], kkt_dual[i],
/// kkt_search_found, contradiction. Booleans are 0/1.
std::vector<RoundTripRow> catalog_round_trip(const CatalogEntry& entry, const SearchConfig& cfg = {});

/// Infinite expectations must match exactly; finite ones within tolerance.
bool matches(ExtendedValue expected, ExtendedValue observed, double tol);

}  // namespace phiconv
