#include <doctest.h>

#include <random>
#include <set>

#include "qcpat/identities.hpp"

using namespace qcpat;

namespace {

IdentityCheck check_at(IdentityId id, int size, std::uint64_t seed) {
  IdentitySpec spec = build_identity(id, size);
  std::mt19937_64 rng(seed);
  SampleConfig cfg = sample_config(spec, rng);
  return check_identity(spec, cfg);
}

}  // namespace

TEST_CASE("every identity holds on random admissible configurations") {
  for (IdentityId id : all_identities()) {
    int size = identity_smallest_size(id);
    IdentitySpec spec = build_identity(id, size);
    std::mt19937_64 rng(0x5EED0000u + static_cast<unsigned>(id));
    int checked = 0;
    int guard = 0;
    while (checked < 3 && guard < 100) {
      ++guard;
      SampleConfig cfg = sample_config(spec, rng);
      IdentityCheck chk = check_identity(spec, cfg);
      if (chk.status == IdentityStatus::Degenerate) continue;
      INFO(identity_name(id) << " size " << size << " config "
                             << describe_config(spec, cfg));
      CHECK(chk.status == IdentityStatus::Holds);
      ++checked;
    }
    CHECK(checked == 3);
  }
}

TEST_CASE("window identities hold at the next size up") {
  for (IdentityId id :
       {IdentityId::CartanWindowA, IdentityId::CartanWindowB}) {
    IdentitySpec spec = build_identity(id, 2);
    std::mt19937_64 rng(0xBEEF);
    SampleConfig cfg = sample_config(spec, rng);
    IdentityCheck chk = check_identity(spec, cfg);
    INFO(identity_name(id) << " config " << describe_config(spec, cfg));
    CHECK(chk.status == IdentityStatus::Holds);
  }
}

TEST_CASE("partial-fraction identities hold at larger sizes") {
  for (IdentityId id :
       {IdentityId::PartialFractionFull, IdentityId::PartialFractionRegrouped,
        IdentityId::PartialFractionReduced}) {
    for (int n : {3, 4}) {
      IdentitySpec spec = build_identity(id, n);
      std::mt19937_64 rng(0xAB00u + n);
      int checked = 0, guard = 0;
      while (checked < 2 && guard < 50) {
        ++guard;
        SampleConfig cfg = sample_config(spec, rng);
        IdentityCheck chk = check_identity(spec, cfg);
        if (chk.status == IdentityStatus::Degenerate) continue;
        INFO(identity_name(id) << " n=" << n << " "
                               << describe_config(spec, cfg));
        CHECK(chk.status == IdentityStatus::Holds);
        ++checked;
      }
      CHECK(checked == 2);
    }
  }
}

TEST_CASE("partial-fraction identities hold at the pinned small point") {
  // n = 2: A = (3), B = (5, 2), C = (7, 4, 1), D = () — all three forms,
  // including the reduced one at q = 1, where the couplings degenerate to
  // plain differences.
  SampleConfig cfg;
  cfg.ratEnv[Var{'A', 1}] = Rational(3);
  cfg.ratEnv[Var{'B', 1}] = Rational(5);
  cfg.ratEnv[Var{'B', 2}] = Rational(2);
  cfg.ratEnv[Var{'C', 1}] = Rational(7);
  cfg.ratEnv[Var{'C', 2}] = Rational(4);
  cfg.ratEnv[Var{'C', 3}] = Rational(1);
  for (IdentityId id :
       {IdentityId::PartialFractionFull, IdentityId::PartialFractionRegrouped,
        IdentityId::PartialFractionReduced}) {
    IdentitySpec spec = build_identity(id, 2);
    cfg.q0 = Rational(7, 3);
    INFO(identity_name(id));
    CHECK(check_identity(spec, cfg).status == IdentityStatus::Holds);
  }
  IdentitySpec spec = build_identity(IdentityId::PartialFractionReduced, 2);
  cfg.q0 = Rational(1);
  CHECK(check_identity(spec, cfg).status == IdentityStatus::Holds);
}

TEST_CASE("kernel quotient identity holds at the pinned equal-argument point") {
  IdentitySpec spec = build_identity(IdentityId::SerreKernel, 0);
  SampleConfig cfg;
  cfg.intEnv[Var{'a', 0}] = 5;
  cfg.intEnv[Var{'b', 0}] = 5;
  CHECK(check_identity(spec, cfg).status == IdentityStatus::Holds);
}

TEST_CASE("kernel quotient identity reports degenerate arguments") {
  IdentitySpec spec = build_identity(IdentityId::SerreKernel, 0);
  SampleConfig cfg;
  cfg.intEnv[Var{'a', 0}] = 6;
  cfg.intEnv[Var{'b', 0}] = 5;  // one quotient bracket vanishes
  CHECK(check_identity(spec, cfg).status == IdentityStatus::Degenerate);
}

TEST_CASE("sampled window configurations satisfy the spacing constraints") {
  IdentitySpec spec = build_identity(IdentityId::CartanWindowA, 2);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    SampleConfig cfg = sample_config(spec, rng);
    for (char fam : {'a', 'b'}) {
      std::vector<long> vals;
      for (const auto& [var, value] : cfg.intEnv)
        if (var.fam == fam) vals.push_back(value);
      REQUIRE(!vals.empty());
      for (size_t x = 0; x < vals.size(); ++x)
        for (size_t y = x + 1; y < vals.size(); ++y)
          CHECK(std::labs(vals[x] - vals[y]) >= 2);
    }
  }
}

TEST_CASE("single bracket shifts are detected") {
  struct Probe {
    IdentityId id;
    int size;
    int site;
    long delta;
  };
  for (const Probe& p : {Probe{IdentityId::BracketTelescope, 0, 2, 1},
                         Probe{IdentityId::CartanWindowA, 1, 0, 1},
                         Probe{IdentityId::CartanWindowB, 1, 4, -1},
                         Probe{IdentityId::PartialFractionReduced, 2, 6, 1},
                         Probe{IdentityId::SerreKernel, 0, 7, -1}}) {
    Mutation m{p.site, p.delta};
    IdentitySpec spec = build_identity(p.id, p.size, &m);
    std::mt19937_64 rng(0xF00D);
    bool caught = false;
    int samples = 0, guard = 0;
    while (samples < 20 && guard < 400) {
      ++guard;
      SampleConfig cfg = sample_config(spec, rng);
      IdentityCheck chk = check_identity(spec, cfg);
      if (chk.status == IdentityStatus::Degenerate) continue;
      ++samples;
      if (chk.status == IdentityStatus::Fails) {
        caught = true;
        break;
      }
    }
    INFO(identity_name(p.id) << " site " << p.site << " delta " << p.delta);
    CHECK(caught);
  }
}

TEST_CASE("identity names round-trip") {
  for (IdentityId id : all_identities()) {
    auto back = identity_from_name(identity_name(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK(!identity_from_name("no-such-identity").has_value());
}

TEST_CASE("site bookkeeping distinguishes live and dormant groups") {
  // The odd-centered window at size 1 has an empty bottom row and a
  // single-entry middle row, so three groups stay dormant until size 2.
  IdentitySpec s1 = build_identity(IdentityId::CartanWindowA, 1);
  CHECK(s1.siteCount == 9);
  std::set<int> live1(s1.liveSites.begin(), s1.liveSites.end());
  CHECK(!live1.count(1));
  CHECK(!live1.count(2));
  CHECK(!live1.count(3));
  CHECK(live1.count(0));
  CHECK(live1.count(8));
  IdentitySpec s2 = build_identity(IdentityId::CartanWindowA, 2);
  CHECK(s2.liveSites.size() == 9);
  CHECK(mutation_site_count(IdentityId::SerreBilinear, 0) == 30);
  CHECK(mutation_site_count(IdentityId::SerreKernel, 0) == 16);
  CHECK(mutation_site_count(IdentityId::BracketTelescope, 0) == 4);
  CHECK(mutation_site_count(IdentityId::PartialFractionFull, 3) == 16);
  CHECK(mutation_site_count(IdentityId::PartialFractionRegrouped, 3) == 18);
  CHECK(mutation_site_count(IdentityId::PartialFractionReduced, 3) == 7);
  CHECK(mutation_site_count(IdentityId::CartanOffDiagonal, 2) == 8);
}

TEST_CASE("mini campaign passes and is deterministic") {
  CampaignPlan plan;
  plan.items = {{IdentityId::BracketTelescope, 0, 10},
                {IdentityId::SerreKernel, 0, 10},
                {IdentityId::CartanOffDiagonal, 2, 5},
                {IdentityId::PartialFractionReduced, 2, 10}};
  plan.mutationControls = false;
  plan.seed = 42;
  CampaignReport a = run_campaign(plan);
  CHECK(a.pass);
  for (const auto& item : a.items) {
    CHECK(item.failures == 0);
    CHECK(item.millis == 0);  // timings stay zero unless requested
  }
  CampaignReport b = run_campaign(plan);
  REQUIRE(a.items.size() == b.items.size());
  for (size_t i = 0; i < a.items.size(); ++i) {
    CHECK(a.items[i].failures == b.items[i].failures);
    CHECK(a.items[i].firstWitness == b.items[i].firstWitness);
  }
}

TEST_CASE("mini campaign with mutation controls catches every site") {
  CampaignPlan plan;
  plan.items = {{IdentityId::BracketTelescope, 0, 5},
                {IdentityId::SerreKernel, 0, 5}};
  plan.mutationControls = true;
  plan.seed = 7;
  CampaignReport rep = run_campaign(plan);
  CHECK(rep.pass);
  // 4 + 16 sites, two deltas each
  CHECK(rep.mutations.size() == 2 * (4 + 16));
  for (const auto& m : rep.mutations) {
    INFO(identity_name(m.id) << " site " << m.site << " delta " << m.delta);
    CHECK(m.caught);
    CHECK(m.samplesUsed <= 20);
  }
}

TEST_CASE("debug mutation makes the campaign fail") {
  CampaignPlan plan;
  plan.items = {{IdentityId::BracketTelescope, 0, 10}};
  plan.mutationControls = false;
  plan.debugMutation = Mutation{2, 1};
  CampaignReport rep = run_campaign(plan);
  CHECK(!rep.pass);
  CHECK(rep.items[0].failures > 0);
  CHECK(!rep.items[0].firstWitness.empty());
}

TEST_CASE("build rejects bad sizes and sites") {
  CHECK_THROWS_AS(build_identity(IdentityId::CartanWindowA, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_identity(IdentityId::PartialFractionFull, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_identity(IdentityId::BracketTelescope, 1),
                  std::invalid_argument);
  Mutation bad{99, 1};
  CHECK_THROWS_AS(build_identity(IdentityId::BracketTelescope, 0, &bad),
                  std::invalid_argument);
}
