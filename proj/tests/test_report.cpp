#include <doctest.h>

#include "hopfcx/driver.hpp"
#include "hopfcx/report.hpp"

using namespace hopfcx;

TEST_CASE("decimal formatting and hashing") {
  CHECK(fmt_g17(0.0) == "0");
  CHECK(fmt_g17(1.0) == "1");
  CHECK(fmt_g17(0.1) == "0.10000000000000001");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}

TEST_CASE("check records aggregate in index order") {
  auto c = make_check("x", "anchor", {1e-12, 3e-11, 2e-12}, 1e-10);
  CHECK(c.status == CheckStatus::Pass);
  CHECK(c.max_residual == 3e-11);
  CHECK(c.samples == 3);
  auto f = make_check("x", "anchor", {1e-12, 2e-10}, 1e-10);
  CHECK(f.status == CheckStatus::Fail);
  auto v = make_check("x", "anchor", {}, 1e-10);
  CHECK(v.status == CheckStatus::VacuousPass);
}

TEST_CASE("report serialization is stable and self-describing") {
  RunConfig cfg;
  cfg.instance = "product";
  cfg.n = 1;
  cfg.samples = 6;
  cfg.tangent_args = 3;
  cfg.seed = 7;
  auto rep = run_verification(cfg);
  std::string bytes = rep.serialize();
  auto j = nlohmann::json::parse(bytes);
  CHECK(j["schema"] == "hopfcx-report-v1");
  CHECK(j["instance"] == "product");
  CHECK(j["manifest"]["seed"] == 7);
  CHECK(j.contains("manifest_hash"));
  CHECK(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("id"));
    CHECK(c.contains("anchor"));
    CHECK(c.contains("status"));
    CHECK(c["max_residual"].is_string());  // %.17g decimal strings
  }
  CHECK(j["summary"]["failed"] == 0);
}

TEST_CASE("reports are byte-identical across worker counts") {
  for (const char* name : {"product", "stiefel-complex"}) {
    RunConfig cfg;
    cfg.instance = name;
    cfg.n = name[0] == 'p' ? 1 : 2;
    cfg.samples = 6;
    cfg.tangent_args = 3;
    cfg.seed = 11;
    cfg.workers = 1;
    auto r1 = run_verification(cfg);
    cfg.workers = 8;
    auto r8 = run_verification(cfg);
    CHECK(r1.serialize() == r8.serialize());
  }
}

TEST_CASE("audit serialization carries the ranked table") {
  VerifyOptions o;
  o.samples = 4;
  o.tangent_args = 2;
  auto audit = convention_audit("stiefel-complex", 1, o);
  auto j = audit.to_json();
  CHECK(j["schema"] == "hopfcx-audit-v1");
  CHECK(j["conventions"].size() == 32);
  CHECK(j["conventions"][0]["rank"] == 1);
  CHECK(j["any_guaranteed_pass"] == true);
}

TEST_CASE("manifest parsing and validation") {
  nlohmann::json doc = {{"instance", "product"}, {"n", 1}, {"samples", 5}, {"seed", 3}};
  auto cfg = config_from_manifest(doc);
  CHECK(cfg.instance == "product");
  CHECK(cfg.samples == 5);

  CHECK_THROWS_AS((void)config_from_manifest(nlohmann::json{{"n", 1}}), ManifestError);
  CHECK_THROWS_AS((void)config_from_manifest(nlohmann::json{{"instance", "product"},
                                                            {"samples", 0}}),
                  ManifestError);
  CHECK_THROWS_AS((void)config_from_manifest(nlohmann::json{{"instance", "product"},
                                                            {"fiber_matrix", {1.0, 2.0}}}),
                  ManifestError);
}
