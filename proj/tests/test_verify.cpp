#include "qcpat/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>
#include <stdexcept>
#include <string>

using namespace qcpat;

namespace {

CheckConfig cfg_default() { return default_config(); }

const CheckResult* find_result(const Report& rep, const std::string& id,
                               const std::string& paramsNeedle) {
  for (const CheckResult& r : rep.results)
    if (r.id == id && r.params.find(paramsNeedle) != std::string::npos) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("configuration validation and digests") {
  CheckConfig cfg = cfg_default();
  CHECK_NOTHROW(validate_config(cfg));

  CheckConfig bad = cfg;
  bad.N = 0;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.vSamples.clear();
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.battery.clear();
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.trials = -1;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.window = -1;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);

  const std::uint64_t base = config_digest(cfg);
  CHECK(base == config_digest(cfg));
  CheckConfig other = cfg;
  other.N = cfg.N + 1;
  CHECK(base != config_digest(other));
  other = cfg;
  other.seed = cfg.seed + 1;
  CHECK(base != config_digest(other));
  other = cfg;
  other.mode = CheckMode::Numeric;
  CHECK(base != config_digest(other));
  other = cfg;
  other.orientation = Orientation::Flipped;
  CHECK(base != config_digest(other));
}

TEST_CASE("every suite passes on the battery in exact mode") {
  const CheckConfig cfg = cfg_default();
  for (const std::string& name : suite_names()) {
    const Report rep = run_suite(name, cfg);
    INFO("suite ", name);
    CHECK(rep.suite == name);
    CHECK(rep.configDigest == config_digest(cfg));
    CHECK(!rep.results.empty());
    CHECK(rep.all_passed());
    CHECK(rep.passed() == static_cast<int>(rep.results.size()));
    CHECK(rep.failed() == 0);
    CHECK(rep.errored() == 0);
  }
  CHECK_THROWS_AS((void)run_suite("bogus", cfg), std::invalid_argument);
}

TEST_CASE("exact-mode pass implies numeric-mode pass") {
  CheckConfig exact = cfg_default();
  CheckConfig numeric = cfg_default();
  numeric.mode = CheckMode::Numeric;
  const Report re = run_suite("all", exact);
  const Report rn = run_suite("all", numeric);
  REQUIRE(re.results.size() == rn.results.size());
  CHECK(re.all_passed());
  CHECK(rn.all_passed());
  for (std::size_t i = 0; i < re.results.size(); ++i) {
    CHECK(re.results[i].id == rn.results[i].id);
    CHECK(re.results[i].status == rn.results[i].status);
  }
}

TEST_CASE("combined run concatenates the suites in canonical order") {
  const CheckConfig cfg = cfg_default();
  const Report all = run_suite("all", cfg);
  CHECK(all.suite == "all");
  std::size_t offset = 0;
  for (const std::string& name : suite_names()) {
    const Report one = run_suite(name, cfg);
    REQUIRE(offset + one.results.size() <= all.results.size());
    for (std::size_t i = 0; i < one.results.size(); ++i) {
      CHECK(all.results[offset + i].id == one.results[i].id);
      CHECK(all.results[offset + i].params == one.results[i].params);
    }
    offset += one.results.size();
  }
  CHECK(offset == all.results.size());
}

TEST_CASE("reports are byte-identical across runs") {
  const CheckConfig cfg = cfg_default();
  const Report a = run_suite("all", cfg);
  const Report b = run_suite("all", cfg);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(report_to_text(a) == report_to_text(b));
  for (const CheckResult& r : a.results) CHECK(r.millis == 0);
}

TEST_CASE("json rendering carries the result fields") {
  const CheckConfig cfg = cfg_default();
  const Report rep = run_suite("hw", cfg);
  const nlohmann::json j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j.at("suite") == "hw");
  CHECK(j.at("config-digest").get<std::string>().size() == 16);
  REQUIRE(j.at("results").is_array());
  REQUIRE(j.at("results").size() == rep.results.size());
  const std::set<std::string> statuses = {"pass", "fail", "error"};
  for (const auto& item : j.at("results")) {
    CHECK(item.contains("id"));
    CHECK(item.contains("params"));
    CHECK(statuses.count(item.at("status").get<std::string>()) == 1);
    CHECK(item.contains("millis"));
  }
  // The battery-distinctness item records its information as a witness.
  const CheckResult* labels = find_result(rep, "hw-distinct-labels", "battery");
  REQUIRE(labels != nullptr);
  CHECK(labels->status == CheckStatus::Pass);
  CHECK(labels->witness == "all highest-weight labels distinct");
}

TEST_CASE("human rendering summarizes the counts") {
  const CheckConfig cfg = cfg_default();
  const Report rep = run_suite("classical", cfg);
  const std::string text = report_to_text(rep);
  CHECK(text.find("suite classical") == 0);
  CHECK(text.find("summary: ") != std::string::npos);
  CHECK(text.find(" 0 failed, 0 errors") != std::string::npos);
}

TEST_CASE("the flipped orientation breaks the Chevalley suite with a witness") {
  CheckConfig cfg = cfg_default();
  cfg.orientation = Orientation::Flipped;
  const Report rep = check_cartan(cfg);
  CHECK(rep.failed() > 0);
  const CheckResult* bad = find_result(rep, "cartan-ef", "sig=ls-s0");
  REQUIRE(bad != nullptr);
  CHECK(bad->status == CheckStatus::Fail);
  CHECK(!bad->witness.empty());
  CHECK(bad->witness.find("[e-1, f-1]") != std::string::npos);
}

TEST_CASE("sharpness probe records information without failing") {
  const CheckConfig cfg = cfg_default();
  const Report rep = check_restricted(cfg);
  CHECK(rep.all_passed());
  const CheckResult* probed = find_result(rep, "restricted-sharpness", "sig=ls-s0");
  REQUIRE(probed != nullptr);
  CHECK(probed->witness.find("violated") != std::string::npos);
  const CheckResult* quiet = find_result(rep, "restricted-sharpness", "sig=trivial");
  REQUIRE(quiet != nullptr);
  CHECK(quiet->witness.find("no violation") != std::string::npos);
}

TEST_CASE("singular scan finds exactly the highest-weight line") {
  CheckConfig cfg = cfg_default();
  const Report rep = singular_scan(cfg);
  CHECK(rep.all_passed());
  CHECK(rep.results.size() == cfg.battery.size() * cfg.vSamples.size());
  for (const CheckResult& r : rep.results) CHECK(r.id == "singular-scan");
  // A deeper window on the stepped signature still pins the kernel at one.
  CheckConfig deep = cfg;
  deep.N = 4;
  deep.battery.clear();
  deep.battery.push_back({"step-3", *battery_signature("step-3")});
  CHECK(singular_scan(deep).all_passed());
}

TEST_CASE("different seeds keep every suite green") {
  CheckConfig cfg = cfg_default();
  cfg.seed = 987654321;
  CHECK(run_suite("locality", cfg).all_passed());
  CHECK(run_suite("restricted", cfg).all_passed());
}

TEST_CASE("timings are recorded only on request") {
  CheckConfig cfg = cfg_default();
  cfg.timings = true;
  const Report rep = run_suite("hw", cfg);
  CHECK(rep.all_passed());
  for (const CheckResult& r : rep.results) CHECK(r.millis >= 0);
}
