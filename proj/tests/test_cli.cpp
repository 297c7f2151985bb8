// Catalog, report serialization, instance ingestion and the C interface.
#include <cstring>

#include "doctest.h"
#include "phiconv/phiconv.h"
#include "phiconv/report.hpp"

using namespace phiconv;

namespace {

struct Result {
  phc_result* r = nullptr;
  ~Result() { phc_result_free(r); }
  Json json() const { return Json::parse(phc_result_json(r)); }
};

struct Instance {
  phc_instance* p = nullptr;
  ~Instance() { phc_instance_free(p); }
};

const char* kInstance = R"({
  "label": "json-6.1",
  "dimension": 1,
  "f": {"type": "piecewise", "pieces": [{"lower": "-inf", "upper": "+inf", "coeffs": [2, 0, 0]}]},
  "g": {"type": "piecewise", "pieces": [{"lower": "-inf", "upper": "+inf", "coeffs": [-1, 0, 0]}]},
  "box": {"lower": [-10], "upper": [10], "points": 2001},
  "phi": {"kind": "lsc-quadratic", "A_MAX": 8, "V_MAX": 32, "grids": {"a": 65, "v": 65}}
})";

}  // namespace

TEST_CASE("catalog contents") {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  for (const char* n : {"example-6.1", "kkt-example", "fenchel-quadratic", "cone-indicator-1d", "gap-instance"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  for (const auto& e : catalog())
    for (const auto& x : e.expected) {
      CHECK(x.tolerance >= 0.0);
      CHECK((x.origin == "published" || x.origin == "derived" || x.origin == "trivial"));
    }
  CHECK_THROWS_AS(catalog_entry("nope"), Error);
}

TEST_CASE("instance JSON") {
  const ProblemInstance inst = instance_from_json(kInstance);
  CHECK(inst.label() == "json-6.1");
  CHECK(inst.f()(Point{1.0}) == ExtendedValue(2.0));
  CHECK(inst.phi().kind() == PhiKind::lsc_quadratic);

  try {
    instance_from_json("{\n  \"dimension\": 1,\n  \"f\": [1 2]\n}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  try {
    instance_from_json(R"({"dimension": 1, "box": {"lower": [0], "upper": [1]}})");
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
    CHECK(std::string(e.what()).find("f") != std::string::npos);
  }
  const char* table = R"({"dimension": 1,
    "f": {"type": "table", "lower": [-1], "upper": [1], "counts": [3], "values": [1, 0, 1]},
    "g": {"type": "quadric-max", "quadrics": [{"q2": 0, "q1": [1], "q0": 0}, {"q2": 0, "q1": [-1], "q0": 0}]},
    "box": {"lower": [-1], "upper": [1], "points": 201}, "phi": {"kind": "affine"}})";
  const ProblemInstance t = instance_from_json(table);
  CHECK(t.f()(Point{0.5}).value() == doctest::Approx(0.5));
  CHECK(t.g()(Point{-0.25}).value() == doctest::Approx(0.25));
}

TEST_CASE("run config") {
  RunConfig rc = run_config_from_json(R"({"box": [-5, 5], "grid": 101, "a_max": 4, "phi_grid": [33, 33], "tol": 1e-5})");
  const ProblemInstance inst = apply_config(rc, catalog_entry("example-6.1").instance);
  CHECK(inst.box().upper()[0] == 5.0);
  CHECK(inst.box().count(0) == 101);
  CHECK(inst.phi().a_max() == 4.0);
  CHECK(inst.phi().a_points() == 33);
  CHECK(search_config(rc).equality_tol == 1e-5);
  CHECK_THROWS_AS(run_config_from_json(R"({"a_max": -1})"), Error);
  CHECK_THROWS_AS(run_config_from_json(R"({"bogus": 1})"), Error);
}

TEST_CASE("JSON values and determinism") {
  CHECK(value_json(ExtendedValue::pos_inf()) == "+inf");
  CHECK(value_json(ExtendedValue::neg_inf()) == "-inf");
  CHECK(value_json(0.1 + 0.2).dump() == "0.3");
  CHECK(value_json(-0.0).dump() == "0.0");
  const auto& e = catalog_entry("example-6.1");
  const std::string a = dump(to_json(duality_chain_report(e.instance)));
  const std::string b = dump(to_json(duality_chain_report(e.instance)));
  CHECK(a == b);
  const Json j = Json::parse(a);
  CHECK(j["val_P"] == 0.0);
  CHECK(j["val_CD"].get<double>() == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(j["val_ICD"] == "-inf");
  // Keys come out sorted.
  std::string prev;
  for (const auto& [k, v] : j.items()) {
    CHECK(prev < k);
    prev = k;
  }
}

TEST_CASE("CSV") {
  const std::string csv = to_csv(duality_chain_report(catalog_entry("example-6.1").instance));
  CHECK(csv.rfind("name,value,parameters,method,a_max,v_max\n", 0) == 0);
  CHECK(csv.find("\nval_ICD,-inf,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("C interface") {
  CHECK(phc_catalog_size() == catalog().size());
  CHECK(std::strcmp(phc_catalog_name(0), catalog()[0].name.c_str()) == 0);
  CHECK(phc_catalog_name(999) == nullptr);

  Instance bad;
  CHECK(phc_instance_from_catalog("nope", &bad.p) == PHC_NOT_FOUND);
  CHECK(bad.p == nullptr);
  CHECK(std::strlen(phc_last_error()) > 0);
  CHECK(phc_instance_from_json("{", &bad.p) == PHC_PARSE_ERROR);
  CHECK(phc_instance_from_json(nullptr, &bad.p) == PHC_INVALID_ARGUMENT);

  Instance inst;
  REQUIRE(phc_instance_from_catalog("example-6.1", &inst.p) == PHC_OK);
  Result rep;
  REQUIRE(phc_dual_report(inst.p, nullptr, &rep.r) == PHC_OK);
  CHECK(phc_result_flag(rep.r, "chain_ok") == 1);
  CHECK(phc_result_flag(rep.r, "missing") == -1);
  CHECK(rep.json()["val_ICD"] == "-inf");
  CHECK(phc_result_csv(rep.r) != nullptr);

  Result bad_cfg;
  CHECK(phc_dual_report(inst.p, "{\"a_max\": 0}", &bad_cfg.r) == PHC_INVALID_ARGUMENT);

  Result gap;
  REQUIRE(phc_gap_analyze(inst.p, nullptr, &gap.r) == PHC_OK);
  const Json g = gap.json()["gap_analysis"];
  CHECK(g["bui"]["overall"] == false);
  CHECK(g["intersection_certificates"].size() == 3);
  for (const auto& c : g["intersection_certificates"]) CHECK(c["found"] == true);

  double v = 0;
  const double b1 = 1.0, b0 = 0.0;
  CHECK(phc_conjugate(inst.p, PHC_G, 2.0, &b1, 1, 0.0, nullptr, &v) == PHC_OK);
  CHECK(v == doctest::Approx(0.25));
  CHECK(phc_conjugate(inst.p, PHC_G, 1.0, &b0, 1, 0.0, nullptr, &v) == PHC_OK);
  CHECK(v == 0.0);
  CHECK(phc_conjugate(inst.p, PHC_G, 0.5, &b0, 1, 0.0, nullptr, &v) == PHC_OK);
  CHECK(std::isinf(v));
  CHECK(phc_conjugate(inst.p, 7, 0.5, &b0, 1, 0.0, nullptr, &v) == PHC_INVALID_ARGUMENT);

  Instance k;
  REQUIRE(phc_instance_from_catalog("kkt-example", &k.p) == PHC_OK);
  const double x2 = 2.0, x0 = 0.0, w = 0.0;
  Result ok, rejected;
  REQUIRE(phc_kkt_verify(k.p, &x2, 1, 1.0, &w, 1, nullptr, &ok.r) == PHC_OK);
  CHECK(phc_result_flag(ok.r, "optimal") == 1);
  REQUIRE(phc_kkt_verify(k.p, &x0, 1, 1.0, &w, 1, nullptr, &rejected.r) == PHC_OK);
  CHECK(phc_result_flag(rejected.r, "optimal") == 0);
  Result neg;
  CHECK(phc_kkt_verify(k.p, &x2, 1, -1.0, &w, 1, nullptr, &neg.r) == PHC_INVALID_ARGUMENT);

  Instance j;
  REQUIRE(phc_instance_from_json(kInstance, &j.p) == PHC_OK);
  Result jr;
  REQUIRE(phc_dual_report(j.p, "", &jr.r) == PHC_OK);
  CHECK(jr.json()["label"] == "json-6.1");
}
