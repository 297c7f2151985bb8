#include "phiconv/phiconv.h"

#include <map>
#include <memory>
#include <string>

#include "phiconv/report.hpp"

using namespace phiconv;

struct phc_instance {
  ProblemInstance inst;
  const CatalogEntry* entry;  // null for JSON instances
};

struct phc_result {
  std::string json;
  std::string csv;
  bool has_csv = false;
  std::map<std::string, bool> flags;
};

namespace {

thread_local std::string g_error;

phc_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return PHC_INVALID_ARGUMENT;
    case ErrorCode::unsupported_configuration: return PHC_UNSUPPORTED;
    case ErrorCode::parse_error: return PHC_PARSE_ERROR;
    case ErrorCode::domain_error: return PHC_DOMAIN_ERROR;
  }
  return PHC_INTERNAL_ERROR;
}

template <class F>
phc_status guarded(F&& body) {
  g_error.clear();
  try {
    body();
    return PHC_OK;
  } catch (const Error& e) {
    g_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    return PHC_INTERNAL_ERROR;
  } catch (...) {
    g_error = "unknown failure";
    return PHC_INTERNAL_ERROR;
  }
}

phc_status missing(const char* what) {
  g_error = std::string(what) + " is null";
  return PHC_INVALID_ARGUMENT;
}

struct Prepared {
  ProblemInstance inst;
  SearchConfig cfg;
  RunConfig rc;
};

Prepared prepare(const phc_instance* h, const char* config_json) {
  RunConfig rc = run_config_from_json(config_json ? config_json : "");
  return {apply_config(rc, h->inst), search_config(rc), rc};
}

}  // namespace

extern "C" {

const char* phc_last_error(void) { return g_error.c_str(); }

const char* phc_status_name(phc_status s) {
  switch (s) {
    case PHC_OK: return "ok";
    case PHC_INVALID_ARGUMENT: return "invalid-argument";
    case PHC_UNSUPPORTED: return "unsupported-configuration";
    case PHC_PARSE_ERROR: return "parse-error";
    case PHC_DOMAIN_ERROR: return "domain-error";
    case PHC_INTERNAL_ERROR: return "internal-error";
    case PHC_NOT_FOUND: return "not-found";
  }
  return "unknown";
}

size_t phc_catalog_size(void) { return catalog().size(); }

const char* phc_catalog_name(size_t index) {
  const auto& c = catalog();
  return index < c.size() ? c[index].name.c_str() : nullptr;
}

phc_status phc_instance_from_json(const char* json, phc_instance** out) {
  if (!json) return missing("json");
  if (!out) return missing("out");
  *out = nullptr;
  return guarded([&] { *out = new phc_instance{instance_from_json(json), nullptr}; });
}

phc_status phc_instance_from_catalog(const char* name, phc_instance** out) {
  if (!name) return missing("name");
  if (!out) return missing("out");
  *out = nullptr;
  g_error.clear();
  for (const auto& e : catalog())
    if (e.name == name) return guarded([&] { *out = new phc_instance{e.instance, &e}; });
  g_error = std::string("unknown catalog entry '") + name + "'";
  return PHC_NOT_FOUND;
}

void phc_instance_free(phc_instance* inst) { delete inst; }

phc_status phc_dual_report(const phc_instance* inst, const char* config_json, phc_result** out) {
  if (!inst) return missing("instance");
  if (!out) return missing("out");
  *out = nullptr;
  return guarded([&] {
    const Prepared p = prepare(inst, config_json);
    const DualityReport r = duality_chain_report(p.inst, p.cfg);
    auto res = std::make_unique<phc_result>();
    res->json = dump(to_json(r));
    res->csv = to_csv(r);
    res->has_csv = true;
    res->flags["chain_ok"] = r.chain_ok;
    *out = res.release();
  });
}

phc_status phc_gap_analyze(const phc_instance* inst, const char* config_json, phc_result** out) {
  if (!inst) return missing("instance");
  if (!out) return missing("out");
  *out = nullptr;
  return guarded([&] {
    const Prepared p = prepare(inst, config_json);
    const DualityReport r = duality_chain_report(p.inst, p.cfg);
    CertifyOptions opts;
    opts.budget = p.cfg.pair_budget;
    opts.support_points = p.cfg.support_points;
    std::vector<double> alphas = p.rc.alpha_list;
    if (inst->entry) {
      opts.seeds = inst->entry->seeds;
      if (alphas.empty()) alphas = inst->entry->alphas;
    }
    const std::vector<double> eps = p.rc.eps_list.empty() ? default_eps_list() : p.rc.eps_list;
    const BridgeReport b = zero_gap_bridge_report(p.inst, alphas, opts, eps, p.cfg);
    Json j = to_json(r);
    j["gap_analysis"] = to_json(b);
    auto res = std::make_unique<phc_result>();
    res->json = dump(j);
    res->csv = to_csv(r);
    res->has_csv = true;
    res->flags["chain_ok"] = r.chain_ok;
    res->flags["bui_overall"] = b.bui.overall;
    res->flags["contradiction"] = b.contradiction;
    *out = res.release();
  });
}

phc_status phc_kkt_verify(const phc_instance* inst, const double* x, size_t n, double a, const double* w, size_t nw,
                          const char* config_json, phc_result** out) {
  if (!inst) return missing("instance");
  if (!x) return missing("x");
  if (!out) return missing("out");
  *out = nullptr;
  return guarded([&] {
    const Prepared p = prepare(inst, config_json);
    const Point xs(std::span<const double>(x, n));
    const Point ws = w ? Point(std::span<const double>(w, nw)) : Point::zeros(p.inst.dim());
    const KktCertificate c = verify_kkt(p.inst, xs, Elementary(a, ws), p.cfg);
    auto res = std::make_unique<phc_result>();
    res->json = dump(to_json(c));
    res->flags["optimal"] = c.optimal;
    res->flags["conditions_consistent"] = c.conditions_consistent;
    *out = res.release();
  });
}

phc_status phc_conjugate(const phc_instance* inst, int which, double a, const double* w, size_t n, double c,
                         const char* config_json, double* out) {
  if (!inst) return missing("instance");
  if (!out) return missing("out");
  if (which != PHC_F && which != PHC_G) {
    g_error = "which must be PHC_F or PHC_G";
    return PHC_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const Prepared p = prepare(inst, config_json);
    const Point ws = w ? Point(std::span<const double>(w, n)) : Point::zeros(p.inst.dim());
    if (ws.dim() != p.inst.dim()) throw_invalid("w has the wrong dimension");
    const Elementary phi(a, ws, c);
    const ProperFunction& f = which == PHC_F ? p.inst.f() : p.inst.g();
    *out = phi_conjugate(f, phi, p.inst.box(), p.cfg).value.to_double();
  });
}

const char* phc_result_json(const phc_result* r) { return r ? r->json.c_str() : nullptr; }

const char* phc_result_csv(const phc_result* r) { return r && r->has_csv ? r->csv.c_str() : nullptr; }

int phc_result_flag(const phc_result* r, const char* name) {
  if (!r || !name) return -1;
  auto it = r->flags.find(name);
  return it == r->flags.end() ? -1 : (it->second ? 1 : 0);
}

void phc_result_free(phc_result* r) { delete r; }

}  // extern "C"
