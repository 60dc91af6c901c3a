#include "qcpat/patterns.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qcpat {

namespace {

std::string rat_term(const Rational& mag, const std::string& symbol) {
  if (symbol.empty()) return rat_to_string(mag);
  if (mag == 1) return symbol;
  return rat_to_string(mag) + "*" + symbol;
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightValue
// ---------------------------------------------------------------------------

std::optional<long> WeightValue::integer_value() const {
  if (!is_constant() || !rat_is_integer(cst)) return std::nullopt;
  return rat_to_long(cst);
}

WeightValue& WeightValue::operator+=(const WeightValue& o) {
  cst += o.cst;
  cmu += o.cmu;
  cxi0 += o.cxi0;
  cxi1 += o.cxi1;
  return *this;
}

WeightValue& WeightValue::operator-=(const WeightValue& o) {
  cst -= o.cst;
  cmu -= o.cmu;
  cxi0 -= o.cxi0;
  cxi1 -= o.cxi1;
  return *this;
}

std::string WeightValue::to_string() const {
  struct Part {
    Rational coef;
    const char* symbol;
  };
  const Part parts[] = {{cmu, "mu"}, {cxi0, "xi0"}, {cxi1, "xi1"}, {cst, ""}};
  std::string out;
  for (const Part& p : parts) {
    if (p.coef == 0) continue;
    const bool neg = p.coef < 0;
    const Rational mag = neg ? Rational(-p.coef) : p.coef;
    const std::string body = rat_term(mag, p.symbol);
    if (out.empty()) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

long Signature::offset_at(int i) const {
  const int clamped = std::min(std::max(i, m), n);
  return offsets[static_cast<std::size_t>(clamped - m)];
}

WeightValue Signature::mu_wv() const {
  return muSymbolic ? WeightValue::mu() : WeightValue::constant(muValue);
}

WeightValue Signature::xi0_wv() const {
  switch (xi0Kind) {
    case ParamKind::Auto:
      return mu_wv() + WeightValue::constant(Rational(offset_at(m)));
    case ParamKind::Value:
      return WeightValue::constant(xi0Value);
    case ParamKind::Symbol:
      return WeightValue::xi0();
  }
  throw std::logic_error("unreachable");
}

WeightValue Signature::xi1_wv() const {
  switch (xi1Kind) {
    case ParamKind::Auto:
      return mu_wv() + WeightValue::constant(Rational(offset_at(n)));
    case ParamKind::Value:
      return WeightValue::constant(xi1Value);
    case ParamKind::Symbol:
      return WeightValue::xi1();
  }
  throw std::logic_error("unreachable");
}

bool operator==(const Signature& a, const Signature& b) {
  return a.m == b.m && a.n == b.n && a.offsets == b.offsets &&
         a.muSymbolic == b.muSymbolic && a.muValue == b.muValue &&
         a.xi0Kind == b.xi0Kind && a.xi1Kind == b.xi1Kind &&
         a.xi0Value == b.xi0Value && a.xi1Value == b.xi1Value;
}

namespace {

void parse_param(const std::string& text, bool allowAuto, ParamKind& kind,
                 Rational& value, bool& symbolic, const char* what) {
  symbolic = false;
  if (text == "sym") {
    kind = ParamKind::Symbol;
    symbolic = true;
    return;
  }
  if (text == "auto") {
    if (!allowAuto) {
      throw std::invalid_argument(std::string(what) + " does not accept \"auto\"");
    }
    kind = ParamKind::Auto;
    return;
  }
  kind = ParamKind::Value;
  try {
    value = rat_from_string(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(what) + ": malformed value \"" + text + "\"");
  }
}

}  // namespace

Signature make_signature(int m, int n, std::vector<long> offsets, const std::string& mu,
                         const std::string& xi0, const std::string& xi1) {
  if (m > n) {
    throw std::invalid_argument("signature requires m <= n, got m=" + std::to_string(m) +
                                " n=" + std::to_string(n));
  }
  const std::size_t want = static_cast<std::size_t>(n - m + 1);
  if (offsets.size() != want) {
    throw std::invalid_argument("signature expects " + std::to_string(want) +
                                " offsets, got " + std::to_string(offsets.size()));
  }
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
    if (offsets[i] < offsets[i + 1]) {
      throw std::invalid_argument("signature offsets must be non-increasing");
    }
  }
  Signature sig;
  sig.m = m;
  sig.n = n;
  sig.offsets = std::move(offsets);
  bool ignored = false;
  ParamKind muKind = ParamKind::Value;
  parse_param(mu, /*allowAuto=*/false, muKind, sig.muValue, sig.muSymbolic, "mu");
  parse_param(xi0, /*allowAuto=*/true, sig.xi0Kind, sig.xi0Value, ignored, "xi0");
  parse_param(xi1, /*allowAuto=*/true, sig.xi1Kind, sig.xi1Value, ignored, "xi1");
  return sig;
}

namespace {

std::string param_text(ParamKind kind, const Rational& value) {
  switch (kind) {
    case ParamKind::Auto:
      return "auto";
    case ParamKind::Symbol:
      return "sym";
    case ParamKind::Value:
      return rat_to_string(value);
  }
  throw std::logic_error("unreachable");
}

std::string json_param(const nlohmann::json& j, const char* key, const char* fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw std::invalid_argument(std::string("signature JSON: \"") + key +
                              "\" must be a string");
}

}  // namespace

Signature signature_from_json(const std::string& jsonText) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(jsonText);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("signature JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw std::invalid_argument("signature JSON: expected an object");
    if (!j.contains("m") || !j.contains("n") || !j.contains("offsets")) {
      throw std::invalid_argument("signature JSON: keys m, n, offsets are required");
    }
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    std::vector<long> offsets = j.at("offsets").get<std::vector<long>>();
    const std::string mu = json_param(j, "mu", "0");
    const std::string xi0 = json_param(j, "xi0", "auto");
    const std::string xi1 = json_param(j, "xi1", "auto");
    return make_signature(m, n, std::move(offsets), mu, xi0, xi1);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("signature JSON: ") + e.what());
  }
}

std::string signature_to_json(const Signature& sig) {
  nlohmann::ordered_json j;
  j["m"] = sig.m;
  j["n"] = sig.n;
  j["offsets"] = sig.offsets;
  j["mu"] = sig.muSymbolic ? "sym" : rat_to_string(sig.muValue);
  j["xi0"] = param_text(sig.xi0Kind, sig.xi0Value);
  j["xi1"] = param_text(sig.xi1Kind, sig.xi1Value);
  return j.dump();
}

std::uint64_t signature_digest(const Signature& sig) {
  std::string blob = "sig|m=" + std::to_string(sig.m) + "|n=" + std::to_string(sig.n) + "|c=";
  for (long c : sig.offsets) blob += std::to_string(c) + ",";
  blob += "|mu=" + (sig.muSymbolic ? std::string("sym") : rat_to_string(sig.muValue));
  blob += "|xi0=" + param_text(sig.xi0Kind, sig.xi0Value);
  blob += "|xi1=" + param_text(sig.xi1Kind, sig.xi1Value);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : blob) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

const std::vector<NamedSignature>& signature_battery() {
  static const std::vector<NamedSignature> battery = [] {
    std::vector<NamedSignature> v;
    v.push_back({"trivial", make_signature(0, 0, {0}, "0")});
    v.push_back({"ls-s0", make_signature(-1, 0, {1, 0}, "0")});
    v.push_back({"ls-s1", make_signature(0, 1, {1, 0}, "0")});
    v.push_back({"step-3", make_signature(-1, 1, {2, 1, 0}, "0")});
    v.push_back({"gap-mu-half", make_signature(-1, 0, {3, 0}, "1/2")});
    return v;
  }();
  return battery;
}

std::optional<Signature> battery_signature(const std::string& name) {
  for (const NamedSignature& ns : signature_battery()) {
    if (ns.name == name) return ns.sig;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rows and patterns
// ---------------------------------------------------------------------------

int row_left_index(int r) { return -(r / 2); }
int row_right_index(int r) { return row_left_index(r) + r - 1; }

std::vector<long> signature_row(const Signature& sig, int r) {
  std::vector<long> row;
  row.reserve(static_cast<std::size_t>(r));
  for (int i = row_left_index(r); i <= row_right_index(r); ++i) {
    row.push_back(sig.offset_at(i));
  }
  return row;
}

bool pattern_less(const Signature& sig, const CPattern& a, const CPattern& b) {
  const int depthMax = std::max(a.depth(), b.depth());
  for (int r = 1; r <= depthMax; ++r) {
    const std::vector<long> rowA =
        r <= a.depth() ? a.rows[static_cast<std::size_t>(r - 1)] : signature_row(sig, r);
    const std::vector<long> rowB =
        r <= b.depth() ? b.rows[static_cast<std::size_t>(r - 1)] : signature_row(sig, r);
    if (rowA != rowB) return rowA < rowB;
  }
  return false;
}

CPattern highest_weight(const Signature& sig) {
  CPattern p;
  p.rows.push_back({sig.offset_at(0)});
  return p;
}

namespace {

// Bounds on entry (i, r) from the materialized row r+1: the pair of
// neighbors sits at indices (i-1, i) for odd r and (i, i+1) for even r, with
// the left neighbor as the upper bound.
void entry_bounds(int r, int i, const std::vector<long>& above, long& lo, long& hi) {
  const int leftAbove = row_left_index(r + 1);
  const int hiIdx = (r % 2 == 1) ? i - 1 : i;
  const int loIdx = hiIdx + 1;
  hi = above[static_cast<std::size_t>(hiIdx - leftAbove)];
  lo = above[static_cast<std::size_t>(loIdx - leftAbove)];
}

}  // namespace

// Shape problems suppress the betweenness scan.
std::vector<std::string> interlacing_violations(const Signature& sig, const CPattern& p) {
  std::vector<std::string> out;
  if (p.rows.empty()) {
    out.push_back("pattern stores no rows");
    return out;
  }
  const int depth = p.depth();
  for (int r = 1; r <= depth; ++r) {
    const std::size_t have = p.rows[static_cast<std::size_t>(r - 1)].size();
    if (have != static_cast<std::size_t>(r)) {
      out.push_back("row " + std::to_string(r) + " stores " + std::to_string(have) +
                    " entries, expected " + std::to_string(r));
    }
  }
  if (!out.empty()) return out;
  for (int r = 1; r <= depth; ++r) {
    const std::vector<long>& cur = p.rows[static_cast<std::size_t>(r - 1)];
    const std::vector<long> above = r < depth ? p.rows[static_cast<std::size_t>(r)]
                                              : signature_row(sig, r + 1);
    const int left = row_left_index(r);
    for (int i = left; i <= row_right_index(r); ++i) {
      long lo = 0;
      long hi = 0;
      entry_bounds(r, i, above, lo, hi);
      const long x = cur[static_cast<std::size_t>(i - left)];
      if (x < lo || x > hi) {
        out.push_back("rows (" + std::to_string(r) + ", " + std::to_string(r + 1) +
                      ") index " + std::to_string(i) + ": entry " + std::to_string(x) +
                      " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
    }
  }
  return out;
}

std::vector<std::string> validate(const Signature& sig, const CPattern& p) {
  std::vector<std::string> out = interlacing_violations(sig, p);
  if (out.empty() && p.depth() > 1 &&
      p.rows.back() == signature_row(sig, p.depth())) {
    out.push_back("row " + std::to_string(p.depth()) +
                  " equals the signature row (pattern not normalized)");
  }
  return out;
}

bool is_valid(const Signature& sig, const CPattern& p) { return validate(sig, p).empty(); }

CPattern normalize(const Signature& sig, CPattern p) {
  while (p.depth() > 1 && p.rows.back() == signature_row(sig, p.depth())) {
    p.rows.pop_back();
  }
  return p;
}

CPattern materialize(const Signature& sig, CPattern p, int depth) {
  while (p.depth() < depth) p.rows.push_back(signature_row(sig, p.depth() + 1));
  return p;
}

namespace {

void check_in_shape(int i, int r) {
  if (r < 1 || i < row_left_index(r) || i > row_right_index(r)) {
    throw std::out_of_range("pattern index (i=" + std::to_string(i) +
                            ", r=" + std::to_string(r) + ") is outside the shape");
  }
}

}  // namespace

long entry(const Signature& sig, const CPattern& p, int i, int r) {
  check_in_shape(i, r);
  if (r <= p.depth()) {
    return p.rows[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(
        i - row_left_index(r))];
  }
  return sig.offset_at(i);
}

WeightValue l_value(const Signature& sig, const CPattern& p, int i, int r) {
  return sig.mu_wv() + WeightValue::constant(Rational(entry(sig, p, i, r) - i));
}

std::optional<CPattern> shift(const Signature& sig, const CPattern& p, int j, int r,
                              int delta) {
  check_in_shape(j, r);
  CPattern q = materialize(sig, p, r);
  q.rows[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(
      j - row_left_index(r))] += delta;
  if (!interlacing_violations(sig, q).empty()) return std::nullopt;
  return normalize(sig, std::move(q));
}

std::vector<CPattern> enumerate_basis(const Signature& sig, int N) {
  if (N < 1) throw std::invalid_argument("enumerate_basis requires N >= 1");
  std::vector<CPattern> out;
  if (N == 1) {
    out.push_back(highest_weight(sig));
    return out;
  }
  std::vector<std::vector<long>> rows(static_cast<std::size_t>(N - 1));
  // Fill rows N-1 down to 1; each entry ranges independently between its two
  // upper neighbors in the already-fixed row above.
  std::function<void(int)> fillRow = [&](int r) {
    if (r == 0) {
      CPattern p;
      p.rows = rows;
      out.push_back(normalize(sig, std::move(p)));
      return;
    }
    const std::vector<long> above =
        r == N - 1 ? signature_row(sig, N) : rows[static_cast<std::size_t>(r)];
    const int left = row_left_index(r);
    std::vector<long>& cur = rows[static_cast<std::size_t>(r - 1)];
    cur.assign(static_cast<std::size_t>(r), 0);
    std::function<void(int)> fillEntry = [&](int i) {
      if (i > row_right_index(r)) {
        fillRow(r - 1);
        return;
      }
      long lo = 0;
      long hi = 0;
      entry_bounds(r, i, above, lo, hi);
      for (long x = lo; x <= hi; ++x) {
        cur[static_cast<std::size_t>(i - left)] = x;
        fillEntry(i + 1);
      }
    };
    fillEntry(left);
  };
  fillRow(N - 1);
  std::sort(out.begin(), out.end(), [&sig](const CPattern& a, const CPattern& b) {
    return pattern_less(sig, a, b);
  });
  return out;
}

int depth_requirement(const Signature& sig, const CPattern& p) {
  const CPattern q = normalize(sig, p);
  return q.depth() == 1 ? 2 : q.depth() + 1;
}

WeightValue weight(const Signature& sig, const CPattern& p, int i) {
  const int absI = i < 0 ? -i : i;
  const int thetaI = i >= 0 ? 1 : 0;
  const int rowA = 2 * absI + thetaI;  // full upper row
  const int rowB = rowA - 1;           // full lower row (empty when i = 0)
  long sums = 0;
  for (int j = row_left_index(rowA); j <= row_right_index(rowA); ++j) {
    sums += entry(sig, p, j, rowA);
  }
  if (rowB >= 1) {
    for (int j = row_left_index(rowB); j <= row_right_index(rowB); ++j) {
      sums -= entry(sig, p, j, rowB);
    }
  }
  WeightValue w = sig.mu_wv() + WeightValue::constant(Rational(sums));
  if (i <= 0) w += sig.xi1_wv() - sig.xi0_wv();
  w -= sig.xi1_wv();
  return w;
}

WeightValue c_eigenvalue(const Signature& sig) { return sig.central_charge(); }

// ---------------------------------------------------------------------------
// Pattern text IO
// ---------------------------------------------------------------------------

std::string pattern_to_text(const CPattern& p, const std::string& sigRef) {
  std::string out = "depth " + std::to_string(p.depth()) + " sig " + sigRef + "\n";
  for (int r = p.depth(); r >= 1; --r) {
    const std::vector<long>& row = p.rows[static_cast<std::size_t>(r - 1)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += " ";
      out += std::to_string(row[k]);
    }
    out += "\n";
  }
  return out;
}

std::string pattern_brief(const CPattern& p) {
  std::string out = "{";
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    if (r) out += ",";
    out += "{";
    for (std::size_t k = 0; k < p.rows[r].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(p.rows[r][k]);
    }
    out += "}";
  }
  out += "}";
  return out;
}

CPattern pattern_from_brief(const std::string& text) {
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  const auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      throw std::invalid_argument("pattern brief: expected '" + std::string(1, c) +
                                  "' at position " + std::to_string(pos));
    }
    ++pos;
  };
  const auto read_long = [&]() -> long {
    skip_ws();
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("pattern brief: expected an integer at position " +
                                  std::to_string(pos));
    }
    pos += used;
    return v;
  };
  CPattern p;
  expect('{');
  skip_ws();
  while (pos < text.size() && text[pos] != '}') {
    if (!p.rows.empty()) expect(',');
    expect('{');
    std::vector<long> row;
    skip_ws();
    while (pos < text.size() && text[pos] != '}') {
      if (!row.empty()) expect(',');
      row.push_back(read_long());
      skip_ws();
    }
    expect('}');
    p.rows.push_back(std::move(row));
    skip_ws();
  }
  expect('}');
  skip_ws();
  if (pos != text.size()) {
    throw std::invalid_argument("pattern brief: trailing characters after the pattern");
  }
  if (p.rows.empty()) {
    throw std::invalid_argument("pattern brief: a pattern stores at least one row");
  }
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    if (p.rows[r].size() != r + 1) {
      throw std::invalid_argument("pattern brief: row " + std::to_string(r + 1) +
                                  " has " + std::to_string(p.rows[r].size()) +
                                  " entries, expected " + std::to_string(r + 1));
    }
  }
  return p;
}

PatternText pattern_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) {
    throw std::invalid_argument("pattern text: missing header line");
  }
  std::istringstream hs(header);
  std::string kwDepth;
  std::string kwSig;
  int depth = 0;
  if (!(hs >> kwDepth >> depth >> kwSig) || kwDepth != "depth" || kwSig != "sig" ||
      depth < 1) {
    throw std::invalid_argument("pattern text: header must be \"depth R sig <ref>\"");
  }
  std::string sigRef;
  std::getline(hs, sigRef);
  const std::size_t start = sigRef.find_first_not_of(" \t");
  sigRef = start == std::string::npos ? std::string() : sigRef.substr(start);
  const std::size_t end = sigRef.find_last_not_of(" \t\r");
  if (end != std::string::npos) sigRef = sigRef.substr(0, end + 1);
  if (sigRef.empty()) {
    throw std::invalid_argument("pattern text: header is missing the signature reference");
  }
  PatternText result;
  result.sigRef = sigRef;
  result.pattern.rows.assign(static_cast<std::size_t>(depth), {});
  for (int r = depth; r >= 1; --r) {
    std::string line;
    if (!std::getline(in, line)) {
      throw std::invalid_argument("pattern text: expected " + std::to_string(depth) +
                                  " rows after the header");
    }
    std::istringstream ls(line);
    std::vector<long>& row = result.pattern.rows[static_cast<std::size_t>(r - 1)];
    long v = 0;
    while (ls >> v) row.push_back(v);
    std::string junk;
    if (!ls.eof() && ls.fail()) {
      ls.clear();
      ls >> junk;
      throw std::invalid_argument("pattern text: non-integer entry \"" + junk +
                                  "\" in row " + std::to_string(r));
    }
    if (row.size() != static_cast<std::size_t>(r)) {
      throw std::invalid_argument("pattern text: row " + std::to_string(r) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(r));
    }
  }
  return result;
}

}  // namespace qcpat
