// Command-line front end over the C interface.
//   exit 0 ok, 1 input error, 2 chain violation (dual-report), 3 KKT
//   conditions fail (kkt-verify).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phiconv/phiconv.h"

namespace {

struct Common {
  std::string catalog;
  std::string instance;
  std::vector<double> box;
  std::optional<int> grid;
  std::optional<double> a_max, v_max, tol;
  std::vector<int> phi_grid;
  std::vector<double> eps_list, alpha_list;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  auto* src = sub->add_option_group("source");
  src->add_option("--catalog", c.catalog, "catalog entry name");
  src->add_option("--instance", c.instance, "instance JSON file");
  src->require_option(1);
  sub->add_option("--box", c.box, "lo,hi on every axis")->delimiter(',')->expected(2);
  sub->add_option("--grid", c.grid, "box points per axis")->check(CLI::Range(2, 1000000));
  sub->add_option("--a-max", c.a_max, "truncation of the quadratic parameter")->check(CLI::PositiveNumber);
  sub->add_option("--v-max", c.v_max, "truncation of the linear parameters")->check(CLI::PositiveNumber);
  sub->add_option("--phi-grid", c.phi_grid, "a points,v points")->delimiter(',')->expected(2);
  sub->add_option("--eps-list", c.eps_list, "epsilons for the bui condition")->delimiter(',');
  sub->add_option("--alpha-list", c.alpha_list, "levels for the intersection certificates")->delimiter(',');
  sub->add_option("--tol", c.tol, "equality tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "output file (default stdout)");
}

std::string config_json(const Common& c) {
  nlohmann::json j = nlohmann::json::object();
  if (!c.box.empty()) j["box"] = c.box;
  if (c.grid) j["grid"] = *c.grid;
  if (c.a_max) j["a_max"] = *c.a_max;
  if (c.v_max) j["v_max"] = *c.v_max;
  if (!c.phi_grid.empty()) j["phi_grid"] = c.phi_grid;
  if (!c.eps_list.empty()) j["eps_list"] = c.eps_list;
  if (!c.alpha_list.empty()) j["alpha_list"] = c.alpha_list;
  if (c.tol) j["tol"] = *c.tol;
  return j.dump();
}

int fail(const char* what, phc_status s) {
  std::cerr << "error: " << what << " (" << phc_status_name(s) << "): " << phc_last_error() << "\n";
  return 1;
}

phc_instance* load(const Common& c, int& code) {
  phc_instance* inst = nullptr;
  phc_status s;
  if (!c.catalog.empty()) {
    s = phc_instance_from_catalog(c.catalog.c_str(), &inst);
  } else {
    std::ifstream in(c.instance);
    if (!in) {
      std::cerr << "error: cannot read " << c.instance << "\n";
      code = 1;
      return nullptr;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    s = phc_instance_from_json(ss.str().c_str(), &inst);
  }
  if (s != PHC_OK) {
    code = fail("loading instance", s);
    return nullptr;
  }
  return inst;
}

int emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream o(c.out, std::ios::binary);
  if (!o || !(o << text)) {
    std::cerr << "error: cannot write " << c.out << "\n";
    return 1;
  }
  return 0;
}

int emit_result(const Common& c, phc_result* r) {
  const char* csv = phc_result_csv(r);
  if (c.format == "csv" && !csv) {
    std::cerr << "error: this command has no CSV form\n";
    return 1;
  }
  return emit(c, c.format == "csv" ? csv : phc_result_json(r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phi-convexity duality toolkit"};
  app.require_subcommand(1);

  Common dual, gap, kkt, conj;
  auto* dual_cmd = app.add_subcommand("dual-report", "chain of primal and dual values");
  add_common(dual_cmd, dual);
  auto* gap_cmd = app.add_subcommand("gap-analyze", "duality report with zero-gap certificates");
  add_common(gap_cmd, gap);

  auto* kkt_cmd = app.add_subcommand("kkt-verify", "check a candidate KKT pair");
  add_common(kkt_cmd, kkt);
  std::vector<double> kx, kw;
  double ka = 0.0;
  kkt_cmd->add_option("--x", kx, "x* coordinates")->delimiter(',')->required();
  kkt_cmd->add_option("--a", ka, "quadratic parameter of phi*");
  kkt_cmd->add_option("--w", kw, "linear parameters of phi*")->delimiter(',');

  auto* conj_cmd = app.add_subcommand("conjugate", "f*(phi) or g*(phi)");
  add_common(conj_cmd, conj);
  std::string which = "f";
  double ca = 0.0, cc = 0.0;
  std::vector<double> cb;
  conj_cmd->add_option("--which", which, "f or g")->check(CLI::IsMember({"f", "g"}));
  conj_cmd->add_option("--a", ca, "quadratic parameter");
  auto* bopt = conj_cmd->add_option("--b", cb, "linear parameters")->delimiter(',');
  conj_cmd->add_option("--w", cb, "alias of --b")->delimiter(',')->excludes(bopt);
  conj_cmd->add_option("--c", cc, "constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  int code = 0;
  if (dual_cmd->parsed() || gap_cmd->parsed()) {
    const bool is_gap = gap_cmd->parsed();
    const Common& c = is_gap ? gap : dual;
    phc_instance* inst = load(c, code);
    if (!inst) return code;
    phc_result* r = nullptr;
    const std::string cfg = config_json(c);
    const phc_status s = is_gap ? phc_gap_analyze(inst, cfg.c_str(), &r) : phc_dual_report(inst, cfg.c_str(), &r);
    phc_instance_free(inst);
    if (s != PHC_OK) return fail(is_gap ? "gap-analyze" : "dual-report", s);
    code = emit_result(c, r);
    if (code == 0 && !is_gap && phc_result_flag(r, "chain_ok") == 0) {
      std::cerr << "chain violation detected\n";
      code = 2;
    }
    phc_result_free(r);
    return code;
  }
  if (kkt_cmd->parsed()) {
    phc_instance* inst = load(kkt, code);
    if (!inst) return code;
    phc_result* r = nullptr;
    const std::string cfg = config_json(kkt);
    const phc_status s = phc_kkt_verify(inst, kx.data(), kx.size(), ka, kw.empty() ? nullptr : kw.data(), kw.size(),
                                        cfg.c_str(), &r);
    phc_instance_free(inst);
    if (s != PHC_OK) return fail("kkt-verify", s);
    code = emit_result(kkt, r);
    if (code == 0 && phc_result_flag(r, "optimal") != 1) code = 3;
    phc_result_free(r);
    return code;
  }
  if (conj_cmd->parsed()) {
    phc_instance* inst = load(conj, code);
    if (!inst) return code;
    double v = 0.0;
    const std::string cfg = config_json(conj);
    const phc_status s = phc_conjugate(inst, which == "f" ? PHC_F : PHC_G, ca, cb.empty() ? nullptr : cb.data(),
                                       cb.size(), cc, cfg.c_str(), &v);
    phc_instance_free(inst);
    if (s != PHC_OK) return fail("conjugate", s);
    char buf[40];
    if (std::isinf(v))
      std::snprintf(buf, sizeof buf, "%s\n", v > 0 ? "+inf" : "-inf");
    else
      std::snprintf(buf, sizeof buf, "%.12g\n", v == 0.0 ? 0.0 : v);
    return emit(conj, buf);
  }
  return 1;
}
