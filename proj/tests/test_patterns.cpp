#include "qcpat/patterns.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

using namespace qcpat;

namespace {

WeightValue wv_const(long c) { return WeightValue::constant(Rational(c)); }

// ---------------------------------------------------------------------------
// Independent enumeration oracle.  Entries are addressed in the (k, theta)
// parametrization (row 2k+theta-1 holds indices [1-theta-k, k-1]) and the
// betweenness conditions are transcribed directly in that form, so that the
// bookkeeping is independent of the library's row-parity formulation.
// ---------------------------------------------------------------------------
long oracle_entry(const Signature& sig, const std::vector<std::vector<long>>& rows, int i,
                  int r) {
  if (r <= static_cast<int>(rows.size())) {
    const int theta = (r % 2 == 0) ? 1 : 0;
    const int k = (r + 1 - theta) / 2;
    const int left = 1 - theta - k;
    return rows[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(i - left)];
  }
  return sig.offset_at(i);
}

bool oracle_valid(const Signature& sig, const std::vector<std::vector<long>>& rows, int N) {
  for (int theta = 0; theta <= 1; ++theta) {
    for (int k = 1;; ++k) {
      const int r = 2 * k + theta - 1;
      if (r > N - 1) break;
      for (int i = 1 - theta - k; i <= k - 1; ++i) {
        const long mid = oracle_entry(sig, rows, i, r);
        const long upLeft = oracle_entry(sig, rows, i + theta - 1, r + 1);
        const long upRight = oracle_entry(sig, rows, i + theta, r + 1);
        if (!(upLeft >= mid && mid >= upRight)) return false;
      }
    }
  }
  return true;
}

std::set<CPattern> oracle_basis(const Signature& sig, int N) {
  std::set<CPattern> out;
  if (N == 1) {
    out.insert(highest_weight(sig));
    return out;
  }
  long lo = sig.offsets.front();
  long hi = sig.offsets.front();
  for (long c : sig.offsets) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  // Flat odometer over every free entry of rows 1..N-1.
  std::vector<std::vector<long>> rows;
  int total = 0;
  for (int r = 1; r <= N - 1; ++r) {
    rows.emplace_back(static_cast<std::size_t>(r), lo);
    total += r;
  }
  std::vector<long*> slots;
  for (auto& row : rows) {
    for (long& x : row) slots.push_back(&x);
  }
  while (true) {
    if (oracle_valid(sig, rows, N)) {
      CPattern p;
      p.rows = rows;
      out.insert(normalize(sig, std::move(p)));
    }
    int pos = total - 1;
    while (pos >= 0 && *slots[static_cast<std::size_t>(pos)] == hi) {
      *slots[static_cast<std::size_t>(pos)] = lo;
      --pos;
    }
    if (pos < 0) break;
    ++*slots[static_cast<std::size_t>(pos)];
  }
  return out;
}

CPattern make_pattern(std::vector<std::vector<long>> rows) {
  CPattern p;
  p.rows = std::move(rows);
  return p;
}

}  // namespace

TEST_CASE("weight values combine and print canonically") {
  const WeightValue w = WeightValue::mu() - WeightValue::xi0() +
                        WeightValue::constant(Rational(3) / 2);
  CHECK(w.to_string() == "mu - xi0 + 3/2");
  CHECK(WeightValue{}.to_string() == "0");
  CHECK((Rational(2) * WeightValue::xi1()).to_string() == "2*xi1");
  CHECK((-WeightValue::mu()).to_string() == "-mu");
  CHECK((wv_const(2) - wv_const(5)).to_string() == "-3");

  CHECK(wv_const(7).integer_value() == 7);
  CHECK(!WeightValue::mu().integer_value().has_value());
  CHECK(!WeightValue::constant(Rational(1) / 2).integer_value().has_value());
  CHECK((WeightValue::mu() - WeightValue::mu()).is_zero());
  CHECK(w == w);
  CHECK(w != WeightValue::mu());
}

TEST_CASE("signature construction validates its inputs") {
  const auto& battery = signature_battery();
  REQUIRE(battery.size() == 5);
  CHECK(battery[0].name == "trivial");
  CHECK(battery[1].name == "ls-s0");
  CHECK(battery[2].name == "ls-s1");
  CHECK(battery[3].name == "step-3");
  CHECK(battery[4].name == "gap-mu-half");
  CHECK(battery_signature("ls-s0").has_value());
  CHECK(!battery_signature("nope").has_value());

  CHECK_THROWS_AS(make_signature(0, -1, {0}), std::invalid_argument);
  CHECK_THROWS_AS(make_signature(-1, 0, {0}), std::invalid_argument);
  CHECK_THROWS_AS(make_signature(-1, 0, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_signature(0, 0, {0}, "zebra"), std::invalid_argument);
  CHECK_THROWS_AS(make_signature(0, 0, {0}, "auto"), std::invalid_argument);
  CHECK_THROWS_AS(make_signature(0, 0, {0}, "0", "1/0"), std::invalid_argument);
  CHECK_NOTHROW(make_signature(-2, 0, {4, 4, 1}, "1/2", "sym", "-3/2"));
}

TEST_CASE("offsets clamp and parameters resolve") {
  const Signature ls = *battery_signature("ls-s0");
  CHECK(ls.offset_at(-5) == 1);
  CHECK(ls.offset_at(-1) == 1);
  CHECK(ls.offset_at(0) == 0);
  CHECK(ls.offset_at(7) == 0);
  CHECK(ls.xi0_wv() == wv_const(1));
  CHECK(ls.xi1_wv() == wv_const(0));
  CHECK(c_eigenvalue(ls) == wv_const(1));

  const Signature gap = *battery_signature("gap-mu-half");
  CHECK(gap.mu_wv() == WeightValue::constant(Rational(1) / 2));
  CHECK(gap.xi0_wv() == WeightValue::constant(Rational(7) / 2));
  CHECK(c_eigenvalue(gap) == wv_const(3));

  const Signature sym = make_signature(-1, 0, {1, 0}, "sym");
  CHECK(sym.xi0_wv() == WeightValue::mu() + wv_const(1));
  CHECK(sym.xi1_wv() == WeightValue::mu());
  CHECK(c_eigenvalue(sym) == wv_const(1));

  const Signature freeXi = make_signature(-1, 0, {1, 0}, "sym", "sym", "-2");
  CHECK(freeXi.xi0_wv() == WeightValue::xi0());
  CHECK(freeXi.xi1_wv() == wv_const(-2));
}

TEST_CASE("signature JSON round trips") {
  for (const NamedSignature& ns : signature_battery()) {
    const Signature back = signature_from_json(signature_to_json(ns.sig));
    CHECK(back == ns.sig);
  }
  const Signature ls = signature_from_json(
      R"({"m": -1, "n": 0, "offsets": [1, 0], "mu": "0", "xi0": "auto", "xi1": "auto"})");
  CHECK(ls == *battery_signature("ls-s0"));

  const Signature defaults = signature_from_json(R"({"m": 0, "n": 0, "offsets": [0]})");
  CHECK(defaults == *battery_signature("trivial"));

  const Signature numeric = signature_from_json(
      R"({"m": 0, "n": 0, "offsets": [0], "mu": 0, "xi0": "3/2", "xi1": "sym"})");
  CHECK(numeric.xi0Kind == ParamKind::Value);
  CHECK(numeric.xi0Value == Rational(3) / 2);
  CHECK(numeric.xi1Kind == ParamKind::Symbol);

  CHECK_THROWS_AS(signature_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(signature_from_json(R"({"m": 0, "n": 0})"), std::invalid_argument);
  CHECK_THROWS_AS(signature_from_json(R"({"m": 0, "n": 0, "offsets": [0], "mu": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(signature_from_json(R"({"m": 1, "n": 0, "offsets": []})"),
                  std::invalid_argument);
}

TEST_CASE("signature digests separate distinct signatures") {
  const Signature a = *battery_signature("ls-s0");
  const Signature b = *battery_signature("ls-s1");
  CHECK(signature_digest(a) == signature_digest(*battery_signature("ls-s0")));
  CHECK(signature_digest(a) != signature_digest(b));
  CHECK(signature_digest(a) != signature_digest(make_signature(-1, 0, {1, 0}, "0", "1")));
  CHECK(signature_digest(a) != signature_digest(make_signature(-1, 0, {1, 0}, "sym")));
}

TEST_CASE("row index ranges and implicit signature rows") {
  CHECK(row_left_index(1) == 0);
  CHECK(row_right_index(1) == 0);
  CHECK(row_left_index(2) == -1);
  CHECK(row_right_index(2) == 0);
  CHECK(row_left_index(3) == -1);
  CHECK(row_right_index(3) == 1);
  CHECK(row_left_index(4) == -2);
  CHECK(row_right_index(4) == 1);
  CHECK(row_left_index(5) == -2);
  CHECK(row_right_index(5) == 2);

  const Signature ls = *battery_signature("ls-s0");
  CHECK(signature_row(ls, 1) == std::vector<long>{0});
  CHECK(signature_row(ls, 2) == std::vector<long>{1, 0});
  CHECK(signature_row(ls, 4) == std::vector<long>{1, 1, 0, 0});
  CHECK(signature_row(*battery_signature("trivial"), 5) ==
        std::vector<long>{0, 0, 0, 0, 0});
  CHECK(signature_row(*battery_signature("step-3"), 4) == std::vector<long>{2, 2, 1, 0});
}

TEST_CASE("highest weight patterns normalize to depth one") {
  for (const NamedSignature& ns : signature_battery()) {
    const CPattern hw = highest_weight(ns.sig);
    INFO("signature ", ns.name);
    CHECK(hw.depth() == 1);
    CHECK(hw.rows[0][0] == ns.sig.offset_at(0));
    CHECK(validate(ns.sig, hw).empty());
    CHECK(depth_requirement(ns.sig, hw) == 2);
  }
}

TEST_CASE("entries and l-values resolve implicit rows") {
  const Signature ls = *battery_signature("ls-s0");
  const CPattern hw = highest_weight(ls);
  CHECK(entry(ls, hw, -1, 2) == 1);
  CHECK(entry(ls, hw, 0, 1) == 0);
  CHECK(entry(ls, hw, -2, 4) == 1);
  CHECK(l_value(ls, hw, -1, 2) == wv_const(2));
  CHECK(l_value(ls, hw, 0, 1) == wv_const(0));

  const Signature sym = make_signature(-1, 0, {1, 0}, "sym");
  CHECK(l_value(sym, highest_weight(sym), -1, 2) == WeightValue::mu() + wv_const(2));

  CHECK_THROWS_AS(entry(ls, hw, 5, 1), std::out_of_range);
  CHECK_THROWS_AS(entry(ls, hw, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(entry(ls, hw, 1, 2), std::out_of_range);
  CHECK_THROWS_AS(entry(ls, hw, -2, 3), std::out_of_range);
}

TEST_CASE("validate reports betweenness and normalization breaches") {
  const Signature ls = *battery_signature("ls-s0");
  CHECK(validate(ls, make_pattern({{1}})).empty());
  CHECK(validate(ls, make_pattern({{0}, {0, 0}})).empty());

  const auto tooBig = validate(ls, make_pattern({{2}}));
  REQUIRE(tooBig.size() == 1);
  CHECK(tooBig[0].find("rows (1, 2)") != std::string::npos);

  const auto unnormalized = validate(ls, make_pattern({{0}, {1, 0}}));
  REQUIRE(unnormalized.size() == 1);
  CHECK(unnormalized[0].find("not normalized") != std::string::npos);

  const auto badShape = validate(ls, make_pattern({{0}, {0}}));
  REQUIRE(badShape.size() == 1);
  CHECK(badShape[0].find("row 2") != std::string::npos);

  CHECK(!validate(ls, CPattern{}).empty());

  // An interior breach two rows up: row 2 exceeds the signature row 3 bound.
  const auto interior = validate(ls, make_pattern({{1}, {2, 0}}));
  REQUIRE(!interior.empty());
  bool mentions23 = false;
  for (const std::string& v : interior) {
    if (v.find("rows (2, 3)") != std::string::npos) mentions23 = true;
  }
  CHECK(mentions23);
}

TEST_CASE("shift applies the deletion convention") {
  const Signature ls = *battery_signature("ls-s0");
  const CPattern hw = highest_weight(ls);

  const auto up = shift(ls, hw, 0, 1, +1);
  REQUIRE(up.has_value());
  CHECK(up->rows == std::vector<std::vector<long>>{{1}});
  CHECK(!shift(ls, hw, 0, 1, -1).has_value());

  const Signature triv = *battery_signature("trivial");
  const CPattern thw = highest_weight(triv);
  for (int delta : {+1, -1}) {
    CHECK(!shift(triv, thw, 0, 1, delta).has_value());
    CHECK(!shift(triv, thw, -1, 2, delta).has_value());
    CHECK(!shift(triv, thw, 0, 2, delta).has_value());
    CHECK(!shift(triv, thw, 1, 3, delta).has_value());
  }

  // Shifting an implicit row materializes it and renormalization trims it.
  const CPattern low = make_pattern({{0}, {0, 0}});
  const auto bumped = shift(ls, low, -1, 2, +1);
  REQUIRE(bumped.has_value());
  CHECK(*bumped == hw);
  const auto back = shift(ls, *bumped, -1, 2, -1);
  REQUIRE(back.has_value());
  CHECK(*back == low);

  // Depth grows when a previously-implicit row moves away from the signature.
  const Signature step = *battery_signature("step-3");
  const auto deep = shift(step, highest_weight(step), 1, 3, +1);
  REQUIRE(deep.has_value());
  CHECK(deep->rows == std::vector<std::vector<long>>{{1}, {2, 1}, {2, 1, 1}});
  CHECK(depth_requirement(step, *deep) == 4);

  CHECK_THROWS_AS(shift(ls, hw, 2, 1, +1), std::out_of_range);
}

TEST_CASE("shift round trips whenever both directions stay in the family") {
  for (const NamedSignature& ns : signature_battery()) {
    for (const CPattern& p : enumerate_basis(ns.sig, 4)) {
      for (int r = 1; r <= 4; ++r) {
        for (int j = row_left_index(r); j <= row_right_index(r); ++j) {
          for (int delta : {+1, -1}) {
            const auto moved = shift(ns.sig, p, j, r, delta);
            if (!moved.has_value()) continue;
            const auto restored = shift(ns.sig, *moved, j, r, -delta);
            REQUIRE(restored.has_value());
            CHECK(*restored == p);
          }
        }
      }
    }
  }
}

TEST_CASE("basis enumeration matches the pinned examples") {
  const Signature triv = *battery_signature("trivial");
  CHECK(enumerate_basis(triv, 5) == std::vector<CPattern>{highest_weight(triv)});

  const Signature ls = *battery_signature("ls-s0");
  CHECK(enumerate_basis(ls, 1) == std::vector<CPattern>{highest_weight(ls)});

  const auto v3 = enumerate_basis(ls, 3);
  REQUIRE(v3.size() == 3);
  CHECK(v3[0] == make_pattern({{0}, {0, 0}}));
  CHECK(v3[1] == make_pattern({{0}}));
  CHECK(v3[2] == make_pattern({{1}}));

  CHECK(enumerate_basis(ls, 5).size() == 10);
  CHECK_THROWS_AS(enumerate_basis(ls, 0), std::invalid_argument);
}

TEST_CASE("basis enumeration agrees with the independent oracle") {
  for (const NamedSignature& ns : signature_battery()) {
    const int nMax = (ns.name == "gap-mu-half" || ns.name == "step-3") ? 4 : 5;
    for (int N = 1; N <= nMax; ++N) {
      const auto basis = enumerate_basis(ns.sig, N);
      const std::set<CPattern> got(basis.begin(), basis.end());
      REQUIRE(got.size() == basis.size());
      INFO("signature ", ns.name, " N=", N);
      CHECK(got == oracle_basis(ns.sig, N));
    }
  }
}

TEST_CASE("bases nest, validate, and stay within the depth bound") {
  for (const NamedSignature& ns : signature_battery()) {
    std::vector<CPattern> prev;
    for (int N = 1; N <= 6; ++N) {
      const auto basis = enumerate_basis(ns.sig, N);
      INFO("signature ", ns.name, " N=", N);
      CHECK(basis.size() >= prev.size());
      CHECK(std::is_sorted(basis.begin(), basis.end(),
                           [&](const CPattern& a, const CPattern& b) {
                             return pattern_less(ns.sig, a, b);
                           }));
      const std::set<CPattern> cur(basis.begin(), basis.end());
      CHECK(cur.count(highest_weight(ns.sig)) == 1);
      for (const CPattern& p : prev) CHECK(cur.count(p) == 1);
      for (const CPattern& p : basis) {
        CHECK(validate(ns.sig, p).empty());
        if (N >= 2) CHECK(depth_requirement(ns.sig, p) <= N);
      }
      prev = basis;
    }
  }
}

TEST_CASE("pattern order is signature-aware") {
  const Signature ls = *battery_signature("ls-s0");
  const CPattern hw = highest_weight(ls);              // materializes as (0; 1, 0)
  const CPattern low = make_pattern({{0}, {0, 0}});    // (0; 0, 0)
  CHECK(pattern_less(ls, low, hw));
  CHECK(!pattern_less(ls, hw, low));
  CHECK(!pattern_less(ls, hw, hw));
  CHECK(hw < low);  // plain structural order disagrees by design
}

TEST_CASE("weights match the highest-weight law") {
  const Signature triv = *battery_signature("trivial");
  for (int i = -5; i <= 5; ++i) {
    CHECK(weight(triv, highest_weight(triv), i) == WeightValue{});
  }
  const Signature ls = *battery_signature("ls-s0");
  CHECK(weight(ls, highest_weight(ls), 0) == wv_const(-1));

  for (const NamedSignature& ns : signature_battery()) {
    const CPattern hw = highest_weight(ns.sig);
    for (int i = -6; i <= 6; ++i) {
      const WeightValue mi = ns.sig.mu_wv() + wv_const(ns.sig.offset_at(i));
      const WeightValue expected =
          i <= 0 ? mi - ns.sig.xi0_wv() : mi - ns.sig.xi1_wv();
      INFO("signature ", ns.name, " i=", i);
      CHECK(weight(ns.sig, hw, i) == expected);
    }
  }
}

TEST_CASE("weight differences are integers and weights vanish far out") {
  std::vector<Signature> sigs;
  for (const NamedSignature& ns : signature_battery()) sigs.push_back(ns.sig);
  sigs.push_back(make_signature(-1, 0, {1, 0}, "sym", "sym", "sym"));
  sigs.push_back(make_signature(-1, 1, {2, 1, 0}, "1/3", "sym", "-1/2"));
  for (const Signature& sig : sigs) {
    for (const CPattern& p : enumerate_basis(sig, 4)) {
      for (int i = -4; i <= 4; ++i) {
        // The Cartan bracket argument: the central term contributes exactly at
        // i = 0 and cancels the boundary parameters there.
        WeightValue diff = weight(sig, p, i) - weight(sig, p, i + 1);
        if (i == 0) diff += c_eigenvalue(sig);
        CHECK(diff.is_constant());
        CHECK(diff.integer_value().has_value());
      }
    }
  }
  // Auto-resolved boundary parameters collapse every distant weight to zero.
  for (const NamedSignature& ns : signature_battery()) {
    for (const CPattern& p : enumerate_basis(ns.sig, 4)) {
      for (int i : {2, 3, 4, 5, -3, -4, -5}) {
        INFO("signature ", ns.name, " i=", i);
        CHECK(weight(ns.sig, p, i) == WeightValue{});
      }
    }
  }
}

TEST_CASE("pattern text round trips") {
  const CPattern p = make_pattern({{1}, {2, 1}, {2, 1, 1}});
  const std::string text = pattern_to_text(p, "step-3.json");
  CHECK(text == "depth 3 sig step-3.json\n2 1 1\n2 1\n1\n");
  const PatternText back = pattern_from_text(text);
  CHECK(back.pattern == p);
  CHECK(back.sigRef == "step-3.json");

  const PatternText hw = pattern_from_text("depth 1 sig sigs/ls s0.json\n0\n");
  CHECK(hw.pattern == make_pattern({{0}}));
  CHECK(hw.sigRef == "sigs/ls s0.json");

  CHECK_THROWS_AS(pattern_from_text(""), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_text("depth 0 sig x\n"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_text("depth 1 sig\n0\n"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_text("depth 2 sig x\n1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_text("depth 1 sig x\n0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_text("depth 1 sig x\nzebra\n"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_text("bad header\n"), std::invalid_argument);
}

TEST_CASE("compact pattern form round trips") {
  const CPattern p = make_pattern({{1}, {2, 1}, {2, 1, 1}});
  CHECK(pattern_brief(p) == "{{1},{2,1},{2,1,1}}");
  CHECK(pattern_from_brief("{{1},{2,1},{2,1,1}}") == p);
  CHECK(pattern_from_brief(" { { 1 } , { 2 , 1 } , { 2 , 1 , 1 } } ") == p);
  CHECK(pattern_from_brief("{{-3}}") == make_pattern({{-3}}));
  CHECK(pattern_brief(make_pattern({{0}, {0, 0}})) == "{{0},{0,0}}");

  CHECK_THROWS_AS(pattern_from_brief(""), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_brief("{}"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_brief("{{0}"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_brief("{{0}} junk"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_brief("{{0,1}}"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_brief("{{0},{1}}"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_brief("{{a}}"), std::invalid_argument);
}
