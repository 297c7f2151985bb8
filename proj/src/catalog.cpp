#include "phiconv/catalog.hpp"

#include <cmath>
#include <map>

namespace phiconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoxDomain default_box() { return BoxDomain::uniform(Point{-10.0}, Point{10.0}, 2001); }

Elementary el(double a, double v) { return Elementary(a, Point{v}); }

ExpectedValue ex(std::string q, ExtendedValue v, double tol, std::string origin) {
  return {std::move(q), v, tol, std::move(origin)};
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  const ExtendedValue ninf = ExtendedValue::neg_inf();

  {
    ProblemInstance inst(ProperFunction(PiecewiseQuadratic::quadratic(2.0, 0.0, 0.0), "2x^2"),
                         ProperFunction(PiecewiseQuadratic::quadratic(-1.0, 0.0, 0.0), "-x^2"), default_box(),
                         PhiClass(PhiKind::lsc_quadratic, 1), "example-6.1");
    CatalogEntry e{"example-6.1",
                   "f = 2x^2, g = -x^2 over the lsc-quadratic class; zero gap for the conjugate dual, "
                   "none for the symmetric one",
                   inst,
                   {-0.5, -0.1, -0.01},
                   {{el(1.0, 0.0), el(3.0, 0.0)}},
                   {},
                   {}};
    e.expected = {ex("val_P", 0.0, 1e-6, "published"),      ex("val_LP", 0.0, 1e-3, "published"),
                  ex("val_LD", 0.0, 1e-3, "published"),     ex("val_CD", 0.0, 1e-3, "published"),
                  ex("val_CD_sym", ninf, 0.0, "derived"),   ex("val_ICD", ninf, 0.0, "published"),
                  ex("chain_ok", 1.0, 0.0, "trivial"),      ex("bui_overall", 0.0, 0.0, "published"),
                  ex("certificates_found", 3.0, 0.0, "published"), ex("contradiction", 0.0, 0.0, "published")};
    out.push_back(std::move(e));
  }
  {
    // 2(x-1)^2 on [0, inf), 2(x+1)^2 on (-inf, 0]; both pieces meet at x = 0.
    PiecewiseQuadratic f({{-kInf, 0.0, 2.0, 4.0, 2.0}, {0.0, kInf, 2.0, -4.0, 2.0}});
    ProblemInstance inst(ProperFunction(f, "2(|x|-1)^2"), ProperFunction(PiecewiseQuadratic::quadratic(-1.0, 0.0, 0.0), "-x^2"),
                         default_box(), PhiClass(PhiKind::lsc_quadratic, 1), "kkt-example");
    CatalogEntry e{"kkt-example",
                   "f = 2(x-1)^2 on x >= 0 and 2(x+1)^2 on x <= 0, g = -x^2; lsc-quadratic KKT pair x* = 2, "
                   "phi* = (1, 0)",
                   inst,
                   {},
                   {},
                   {{Point{2.0}, el(1.0, 0.0), true}, {Point{0.0}, el(1.0, 0.0), false}},
                   {}};
    e.expected = {ex("val_P", -2.0, 1e-6, "published"),    ex("val_LP", -2.0, 1e-3, "derived"),
                  ex("val_CD", -2.0, 1e-3, "derived"),     ex("val_CD_sym", ninf, 0.0, "derived"),
                  ex("val_ICD", ninf, 0.0, "derived"),     ex("chain_ok", 1.0, 0.0, "trivial"),
                  ex("kkt_optimal[0]", 1.0, 0.0, "published"), ex("kkt_primal[0]", -2.0, 1e-6, "published"),
                  ex("kkt_dual[0]", -2.0, 1e-6, "published"),  ex("kkt_optimal[1]", 0.0, 0.0, "derived")};
    out.push_back(std::move(e));
  }
  {
    ProblemInstance inst(ProperFunction(PiecewiseQuadratic::quadratic(1.0, 0.0, 0.0), "x^2"),
                         ProperFunction(PiecewiseQuadratic::quadratic(1.0, 0.0, 0.0), "x^2"), default_box(),
                         PhiClass(PhiKind::affine, 1), "fenchel-quadratic");
    CatalogEntry e{"fenchel-quadratic",
                   "f = g = x^2 over the affine class; every dual collapses to the Fenchel dual",
                   inst,
                   {-0.5, -0.1, -0.01},
                   {},
                   {{Point{0.0}, el(0.0, 0.0), true}},
                   {}};
    e.expected = {ex("val_P", 0.0, 1e-6, "derived"),      ex("val_LP", 0.0, 1e-3, "derived"),
                  ex("val_LD", 0.0, 1e-3, "derived"),     ex("val_CD", 0.0, 1e-3, "derived"),
                  ex("val_CD_sym", 0.0, 1e-3, "derived"), ex("val_ICD", 0.0, 1e-3, "derived"),
                  ex("chain_ok", 1.0, 0.0, "trivial"),    ex("bui_overall", 1.0, 0.0, "derived"),
                  ex("certificates_found", 3.0, 0.0, "derived"), ex("kkt_optimal[0]", 1.0, 0.0, "derived")};
    out.push_back(std::move(e));
  }
  {
    ProblemInstance inst(ProperFunction(PiecewiseQuadratic::quadratic(1.0, 2.0, 1.0), "(x+1)^2"),
                         ProperFunction(PiecewiseQuadratic::indicator_interval(0.0, kInf), "ind[0,inf)"),
                         default_box(), PhiClass(PhiKind::affine, 1), "cone-indicator-1d");
    CatalogEntry e{"cone-indicator-1d",
                   "f = (x+1)^2 restricted to the cone K = [0, inf) through g = indicator of K; the dual "
                   "multiplier v = -2 lies in the polar cone",
                   inst,
                   {0.5, 0.9, 0.99},
                   {},
                   {{Point{0.0}, el(0.0, -2.0), true}},
                   {}};
    e.expected = {ex("val_P", 1.0, 1e-6, "derived"),      ex("val_LP", 1.0, 1e-3, "derived"),
                  ex("val_LD", 1.0, 1e-3, "derived"),     ex("val_CD", 1.0, 1e-3, "derived"),
                  ex("val_CD_sym", 1.0, 1e-3, "derived"), ex("val_ICD", 1.0, 1e-3, "derived"),
                  ex("chain_ok", 1.0, 0.0, "trivial"),    ex("kkt_optimal[0]", 1.0, 0.0, "derived"),
                  ex("kkt_dual[0]", 1.0, 1e-6, "derived")};
    out.push_back(std::move(e));
  }
  {
    ProblemInstance inst(ProperFunction(PiecewiseQuadratic::indicator_points({-1.0, 1.0}), "ind{-1,1}"),
                         ProperFunction(PiecewiseQuadratic::quadratic(1.0, 0.0, 0.0), "x^2"), default_box(),
                         PhiClass(PhiKind::affine, 1), "gap-instance");
    CatalogEntry e{"gap-instance",
                   "f = indicator of {-1, 1}, g = x^2 over the affine class; the conjugate dual leaves a gap of 1",
                   inst,
                   {0.25, 0.5, 0.75},
                   {},
                   {},
                   {}};
    e.expected = {ex("val_P", 1.0, 1e-6, "derived"),      ex("val_LP", 1.0, 1e-3, "derived"),
                  ex("val_CD", 0.0, 1e-3, "derived"),     ex("val_CD_sym", 0.0, 1e-3, "derived"),
                  ex("val_ICD", 0.0, 1e-3, "derived"),    ex("chain_ok", 1.0, 0.0, "trivial"),
                  ex("bui_overall", 0.0, 0.0, "derived"), ex("certificates_found", 0.0, 0.0, "derived"),
                  ex("kkt_search_found", 0.0, 0.0, "derived")};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw_invalid("unknown catalog entry '" + name + "'");
}

bool matches(ExtendedValue expected, ExtendedValue observed, double tol) {
  if (!expected.is_finite() || !observed.is_finite()) return expected == observed;
  return std::abs(expected.value() - observed.value()) <= tol;
}

std::vector<RoundTripRow> catalog_round_trip(const CatalogEntry& entry, const SearchConfig& cfg) {
  std::map<std::string, ExtendedValue> observed;
  auto needs = [&](const std::string& prefix) {
    for (const auto& e : entry.expected)
      if (e.quantity.rfind(prefix, 0) == 0) return true;
    return false;
  };

  const DualityReport rep = duality_chain_report(entry.instance, cfg);
  observed["val_P"] = rep.val_P;
  observed["val_LP"] = rep.val_LP;
  observed["val_LD"] = rep.val_LD;
  observed["val_CD"] = rep.val_CD;
  observed["val_CD_sym"] = rep.val_CD_sym;
  observed["val_ICD"] = rep.val_ICD;
  observed["chain_ok"] = rep.chain_ok ? 1.0 : 0.0;

  if (needs("bui_overall") || needs("certificates_found") || needs("contradiction")) {
    CertifyOptions opts;
    opts.seeds = entry.seeds;
    opts.budget = cfg.pair_budget;
    opts.support_points = cfg.support_points;
    const BridgeReport br = zero_gap_bridge_report(entry.instance, entry.alphas, opts, default_eps_list(), cfg);
    observed["bui_overall"] = br.bui.overall ? 1.0 : 0.0;
    double found = 0;
    for (const auto& c : br.certificates) found += c.found ? 1 : 0;
    observed["certificates_found"] = found;
    observed["contradiction"] = br.contradiction ? 1.0 : 0.0;
  }
  for (std::size_t i = 0; i < entry.kkt_checks.size(); ++i) {
    const auto& k = entry.kkt_checks[i];
    const KktCertificate c = verify_kkt(entry.instance, k.x, k.phi, cfg);
    const std::string idx = "[" + std::to_string(i) + "]";
    observed["kkt_optimal" + idx] = c.optimal ? 1.0 : 0.0;
    observed["kkt_primal" + idx] = c.primal_value;
    observed["kkt_dual" + idx] = c.dual_value;
  }
  if (needs("kkt_search_found"))
    observed["kkt_search_found"] = search_kkt_pair(entry.instance, cfg.kkt_budget, cfg) ? 1.0 : 0.0;

  std::vector<RoundTripRow> rows;
  for (const auto& e : entry.expected) {
    RoundTripRow r{e.quantity, e.value, ExtendedValue::neg_inf(), e.tolerance, e.origin, false};
    auto it = observed.find(e.quantity);
    if (it == observed.end()) throw_invalid("catalog quantity '" + e.quantity + "' is not computed");
    r.observed = it->second;
    r.pass = matches(e.value, r.observed, e.tolerance);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace phiconv
