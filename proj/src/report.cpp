#include "phiconv/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace phiconv {

namespace {

[[noreturn]] void schema(const std::string& what) { throw_invalid("instance: " + what); }

double round12(double x) {
  if (x == 0.0) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

double number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  schema(where + " must be a number or \"+inf\"/\"-inf\"");
}

double finite_number(const Json& j, const std::string& where) {
  const double x = number(j, where);
  if (!std::isfinite(x)) schema(where + " must be finite");
  return x;
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema(where + "." + key + " is missing");
  return j.at(key);
}

Point point_of(const Json& j, std::size_t dim, const std::string& where) {
  std::vector<double> c;
  if (j.is_number()) {
    c.assign(dim, j.get<double>());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(finite_number(j[i], where + "[" + std::to_string(i) + "]"));
  } else {
    schema(where + " must be an array");
  }
  if (c.size() != dim) schema(where + " must have " + std::to_string(dim) + " entries");
  return Point(std::span<const double>(c));
}

std::vector<int> counts_of(const Json& j, std::size_t dim, const std::string& where) {
  std::vector<int> n;
  if (j.is_number_integer()) {
    n.assign(dim, j.get<int>());
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_number_integer()) schema(where + " entries must be integers");
      n.push_back(e.get<int>());
    }
  } else {
    schema(where + " must be an integer or an array of integers");
  }
  if (n.size() != dim) schema(where + " must have " + std::to_string(dim) + " entries");
  return n;
}

ProperFunction function_of(const Json& j, const BoxDomain& box, const std::string& where) {
  const std::string type = field(j, "type", where).get<std::string>();
  const std::string label = j.value("label", type);
  if (type == "piecewise") {
    if (box.dim() != 1) schema(where + ": piecewise functions are one-dimensional");
    std::vector<QuadraticPiece> pieces;
    const Json& arr = field(j, "pieces", where);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = where + ".pieces[" + std::to_string(i) + "]";
      const Json& co = field(arr[i], "coeffs", w);
      if (!co.is_array() || co.size() != 3) schema(w + ".coeffs must be [alpha, beta, gamma]");
      pieces.push_back({number(field(arr[i], "lower", w), w + ".lower"), number(field(arr[i], "upper", w), w + ".upper"),
                        finite_number(co[0], w + ".coeffs[0]"), finite_number(co[1], w + ".coeffs[1]"),
                        finite_number(co[2], w + ".coeffs[2]")});
    }
    return ProperFunction(PiecewiseQuadratic(std::move(pieces)), label);
  }
  if (type == "table") {
    const std::size_t dim = box.dim();
    BoxDomain tb(point_of(field(j, "lower", where), dim, where + ".lower"),
                 point_of(field(j, "upper", where), dim, where + ".upper"),
                 counts_of(field(j, "counts", where), dim, where + ".counts"));
    std::vector<double> vals;
    for (const auto& v : field(j, "values", where)) vals.push_back(number(v, where + ".values"));
    return ProperFunction(TabulatedFunction::from_table(tb, std::move(vals)), label);
  }
  if (type == "quadric-max") {
    std::vector<Quadric> qs;
    const Json& arr = field(j, "quadrics", where);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = where + ".quadrics[" + std::to_string(i) + "]";
      qs.emplace_back(finite_number(field(arr[i], "q2", w), w + ".q2"), point_of(field(arr[i], "q1", w), box.dim(), w + ".q1"),
                      finite_number(field(arr[i], "q0", w), w + ".q0"));
    }
    if (qs.empty()) schema(where + ".quadrics is empty");
    return ProperFunction(TabulatedFunction::quadric_max(box, std::move(qs)), label);
  }
  schema(where + ".type must be piecewise, table or quadric-max");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

ProblemInstance instance_from_json(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object()) schema("top level must be an object");
  try {
    const Json& d = field(j, "dimension", "instance");
    if (!d.is_number_integer() || d.get<int>() < 1 || d.get<int>() > 2) schema("dimension must be 1 or 2");
    const std::size_t dim = d.get<std::size_t>();
    const Json& b = field(j, "box", "instance");
    BoxDomain box(point_of(field(b, "lower", "box"), dim, "box.lower"), point_of(field(b, "upper", "box"), dim, "box.upper"),
                  counts_of(b.value("points", Json(2001)), dim, "box.points"));
    PhiKind kind = PhiKind::lsc_quadratic;
    double a_max = 8.0, v_max = 32.0;
    int na = 65, nv = 65;
    if (j.contains("phi")) {
      const Json& p = j.at("phi");
      if (p.contains("kind")) kind = phi_kind_from_string(p.at("kind").get<std::string>());
      if (p.contains("A_MAX")) a_max = finite_number(p.at("A_MAX"), "phi.A_MAX");
      if (p.contains("V_MAX")) v_max = finite_number(p.at("V_MAX"), "phi.V_MAX");
      if (p.contains("grids")) {
        na = p.at("grids").value("a", na);
        nv = p.at("grids").value("v", nv);
      }
    }
    ProperFunction f = function_of(field(j, "f", "instance"), box, "f");
    ProperFunction g = function_of(field(j, "g", "instance"), box, "g");
    return ProblemInstance(std::move(f), std::move(g), box, PhiClass(kind, dim, a_max, v_max, na, nv),
                           j.value("label", std::string("instance")));
  } catch (const Json::exception& e) {
    schema(std::string("wrong field type (") + e.what() + ")");
  }
}

RunConfig run_config_from_json(const std::string& text) {
  RunConfig rc;
  if (text.empty()) return rc;
  const Json j = parse_json(text);
  if (!j.is_object()) throw_invalid("config must be an object");
  auto positive = [](double x, const char* name) {
    if (!(x > 0) || !std::isfinite(x)) throw_invalid(std::string("config: ") + name + " must be positive");
    return x;
  };
  auto pair_of = [](const Json& v, const char* name) {
    if (!v.is_array() || v.size() != 2) throw_invalid(std::string("config: ") + name + " needs two entries");
    return std::make_pair(v[0].get<double>(), v[1].get<double>());
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "box") {
        rc.box = pair_of(v, "box");
        if (!(rc.box->first < rc.box->second)) throw_invalid("config: box needs lo < hi");
      } else if (key == "grid") {
        if (v.get<int>() < 2) throw_invalid("config: grid must be >= 2");
        rc.grid = v.get<int>();
      } else if (key == "a_max") {
        rc.a_max = positive(v.get<double>(), "a_max");
      } else if (key == "v_max") {
        rc.v_max = positive(v.get<double>(), "v_max");
      } else if (key == "phi_grid") {
        auto p = pair_of(v, "phi_grid");
        if (p.first < 2 || p.second < 2) throw_invalid("config: phi_grid entries must be >= 2");
        rc.phi_grid = std::make_pair(static_cast<int>(p.first), static_cast<int>(p.second));
      } else if (key == "eps_list") {
        for (const auto& e : v) rc.eps_list.push_back(positive(e.get<double>(), "eps_list entries"));
      } else if (key == "alpha_list") {
        for (const auto& e : v) rc.alpha_list.push_back(e.get<double>());
      } else if (key == "tol") {
        rc.tol = positive(v.get<double>(), "tol");
      } else {
        throw_invalid("config: unknown key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw_invalid(std::string("config: wrong value type (") + e.what() + ")");
  }
  return rc;
}

ProblemInstance apply_config(const RunConfig& rc, const ProblemInstance& inst) {
  ProblemInstance out = inst;
  if (rc.box || rc.grid) {
    const BoxDomain& b = inst.box();
    Point lo = b.lower(), hi = b.upper();
    if (rc.box)
      for (std::size_t k = 0; k < b.dim(); ++k) {
        lo[k] = rc.box->first;
        hi[k] = rc.box->second;
      }
    std::vector<int> counts = b.counts();
    if (rc.grid) counts.assign(b.dim(), *rc.grid);
    out = out.with_box(BoxDomain(lo, hi, counts));
  }
  PhiClass phi = out.phi();
  if (rc.a_max || rc.v_max) phi = phi.with_bounds(rc.a_max.value_or(phi.a_max()), rc.v_max.value_or(phi.v_max()));
  if (rc.phi_grid) phi = phi.with_grid(rc.phi_grid->first, rc.phi_grid->second);
  return out.with_phi(phi);
}

SearchConfig search_config(const RunConfig& rc) {
  SearchConfig cfg;
  if (rc.tol) cfg.equality_tol = *rc.tol;
  return cfg;
}

Json value_json(ExtendedValue v) {
  if (v.is_pos_inf()) return "+inf";
  if (v.is_neg_inf()) return "-inf";
  return round12(v.to_double());
}

Json to_json(const Point& p) {
  Json a = Json::array();
  for (double c : p.coords()) a.push_back(round12(c));
  return a;
}

Json to_json(const Elementary& phi) {
  return {{"a", round12(phi.a())}, {"v", to_json(phi.v())}, {"c", round12(phi.c())}};
}

namespace {

template <class T>
Json opt_json(const std::optional<T>& o) {
  return o ? to_json(*o) : Json(nullptr);
}

Json string_map(const std::map<std::string, std::string>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

Json cert_json(const SubgradientCertificate& c) {
  Json j = {{"holds", c.holds},
            {"worst_violation", value_json(c.worst_violation)},
            {"epsilon", round12(c.epsilon)},
            {"tolerance", c.tolerance},
            {"method", to_string(c.method)},
            {"witness_point", opt_json(c.witness_point)},
            {"witness_elementary", opt_json(c.witness_elementary)}};
  return j;
}

}  // namespace

Json to_json(const DualityReport& r) {
  Json j;
  j["label"] = r.label;
  j["val_P"] = value_json(r.val_P);
  j["val_LP"] = value_json(r.val_LP);
  j["val_LD"] = value_json(r.val_LD);
  j["val_CD"] = value_json(r.val_CD);
  j["val_CD_sym"] = value_json(r.val_CD_sym);
  j["val_ICD"] = value_json(r.val_ICD);
  j["argmin_P"] = opt_json(r.argmin_P);
  j["argmin_LP"] = opt_json(r.argmin_LP);
  j["best_dual_elementary"] = opt_json(r.best_dual_elementary);
  j["best_cd_sym_elementary"] = opt_json(r.best_cd_sym_elementary);
  j["best_icd_pair"] =
      r.best_icd_pair ? Json::array({to_json(r.best_icd_pair->first), to_json(r.best_icd_pair->second)}) : Json(nullptr);
  j["gap_CD"] = value_json(r.gap_CD);
  j["gap_ICD"] = value_json(r.gap_ICD);
  j["chain_ok"] = r.chain_ok;
  j["violations"] = r.violations;
  j["methods"] = string_map(r.methods);
  j["notes"] = string_map(r.notes);
  j["phi"] = {{"kind", to_string(r.kind)},
              {"A_MAX", round12(r.a_max)},
              {"V_MAX", round12(r.v_max)},
              {"a_points", r.a_points},
              {"v_points", r.v_points}};
  j["tolerance"] = r.tolerance;
  return j;
}

Json to_json(const KktCertificate& c) {
  return {{"variant", c.variant == KktVariant::lsc ? "lsc" : "symmetric"},
          {"x_star", to_json(c.x_star)},
          {"phi_star", to_json(c.phi_star)},
          {"cond1", cert_json(c.cond1)},
          {"cond2", cert_json(c.cond2)},
          {"primal_value", value_json(c.primal_value)},
          {"dual_value", value_json(c.dual_value)},
          {"values_agree", c.values_agree},
          {"optimal", c.optimal},
          {"conditions_consistent", c.conditions_consistent},
          {"f_phi_convex_at_x", c.f_phi_convex_at_x},
          {"g_phi_convex_at_x", c.g_phi_convex_at_x},
          {"A_MAX", round12(c.a_max)},
          {"V_MAX", round12(c.v_max)},
          {"notes", c.notes}};
}

Json to_json(const ZeroGapCertificate& c) {
  Json j = {{"alpha", round12(c.alpha)},
            {"found", c.found},
            {"phase", c.phase},
            {"psi1", opt_json(c.psi1)},
            {"psi2", opt_json(c.psi2)},
            {"support1", opt_json(c.support1)},
            {"support2", opt_json(c.support2)},
            {"checks", c.checks}};
  if (c.intersection) {
    const auto& in = *c.intersection;
    j["intersection"] = {{"holds", in.holds},
                         {"t0", in.t0 ? Json(round12(*in.t0)) : Json(nullptr)},
                         {"min_over_x_at_t0", value_json(in.min_over_x_at_t0)}};
  } else {
    j["intersection"] = nullptr;
  }
  return j;
}

Json to_json(const BuiConditionResult& b) {
  Json per = Json::array();
  for (const auto& e : b.per_eps) {
    Json w = nullptr;
    if (e.witness) w = {{"x_bar", to_json(e.witness->x_bar)}, {"phi", to_json(e.witness->phi)}};
    per.push_back({{"epsilon", round12(e.epsilon)}, {"found", e.found}, {"witness", w}});
  }
  return {{"overall", b.overall}, {"per_eps", per}, {"best_residual", value_json(b.best_residual)}};
}

Json to_json(const BridgeReport& b) {
  Json certs = Json::array();
  for (const auto& c : b.certificates) certs.push_back(to_json(c));
  Json alphas = Json::array();
  for (double a : b.alphas) alphas.push_back(round12(a));
  return {{"bui", to_json(b.bui)},
          {"intersection_certificates", certs},
          {"alphas", alphas},
          {"condition1", b.condition1},
          {"condition2", b.condition2},
          {"val_P", value_json(b.val_P)},
          {"val_LP", value_json(b.val_LP)},
          {"equality_hypothesis", b.equality_hypothesis},
          {"kappa_finite_above", b.kappa_finite_above},
          {"hypotheses",
           {{"convex", b.hyp_convex}, {"symmetric", b.hyp_symmetric}, {"additive", b.hyp_additive}, {"zero", b.hyp_zero}}},
          {"applicable_2_to_1", b.applicable_2_to_1},
          {"applicable_1_to_2", b.applicable_1_to_2},
          {"exercised_2_to_1", b.exercised_2_to_1},
          {"exercised_1_to_2", b.exercised_1_to_2},
          {"contradiction", b.contradiction},
          {"discrepancies", b.discrepancies},
          {"notes", b.notes}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string to_csv(const DualityReport& r) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  auto params = [](const std::optional<Elementary>& e) {
    if (!e) return std::string();
    return "a=" + ExtendedValue(e->a()).to_string() + ";v=" + to_string(e->v());
  };
  auto method = [&](const char* k) {
    auto it = r.methods.find(k);
    return it == r.methods.end() ? std::string() : it->second;
  };
  const std::string bounds = "," + ExtendedValue(r.a_max).to_string() + "," + ExtendedValue(r.v_max).to_string() + "\n";
  std::ostringstream os;
  os << "name,value,parameters,method,a_max,v_max\n";
  auto row = [&](const char* name, ExtendedValue v, const std::string& p) {
    os << name << "," << v.to_string() << "," << quote(p) << "," << quote(method(name)) << bounds;
  };
  row("val_P", r.val_P, r.argmin_P ? "x=" + to_string(*r.argmin_P) : "");
  row("val_LP", r.val_LP, r.argmin_LP ? "x=" + to_string(*r.argmin_LP) : "");
  row("val_LD", r.val_LD, params(r.best_dual_elementary));
  row("val_CD", r.val_CD, params(r.best_dual_elementary));
  row("val_CD_sym", r.val_CD_sym, params(r.best_cd_sym_elementary));
  row("val_ICD", r.val_ICD,
      r.best_icd_pair ? params(r.best_icd_pair->first) + "|" + params(r.best_icd_pair->second) : "");
  return os.str();
}

}  // namespace phiconv
