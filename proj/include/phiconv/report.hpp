#pragma once

// JSON/CSV serialization, instance ingestion and run configuration.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "phiconv/catalog.hpp"

namespace phiconv {

using Json = nlohmann::json;

/// Overrides applied on top of an instance. Empty fields leave it as is.
struct RunConfig {
  std::optional<std::pair<double, double>> box;  // [lo, hi] on every axis
  std::optional<int> grid;                       // box points per axis
  std::optional<double> a_max, v_max;
  std::optional<std::pair<int, int>> phi_grid;  // (a points, v points)
  std::vector<double> eps_list;
  std::vector<double> alpha_list;
  std::optional<double> tol;  // equality tolerance
};

/// Keys: box [lo, hi], grid, a_max, v_max, phi_grid [na, nv], eps_list,
/// alpha_list, tol. Empty text is the empty config.
RunConfig run_config_from_json(const std::string& text);
ProblemInstance apply_config(const RunConfig& rc, const ProblemInstance& inst);
SearchConfig search_config(const RunConfig& rc);

/// Parse failures raise parse_error with "line L, column C"; schema
/// violations raise invalid_argument naming the offending field.
ProblemInstance instance_from_json(const std::string& text);
Json parse_json(const std::string& text);

/// %.12g-rounded number, or "+inf"/"-inf".
Json value_json(ExtendedValue v);
Json to_json(const Point& p);
Json to_json(const Elementary& phi);
Json to_json(const DualityReport& r);
Json to_json(const KktCertificate& c);
Json to_json(const ZeroGapCertificate& c);
Json to_json(const BuiConditionResult& b);
Json to_json(const BridgeReport& b);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
/// Header name,value,parameters,method,a_max,v_max; one row per value.
std::string to_csv(const DualityReport& r);

}  // namespace phiconv
