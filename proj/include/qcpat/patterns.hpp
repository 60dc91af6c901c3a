#pragma once

#include "qcpat/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcpat {

// ---------------------------------------------------------------------------
// WeightValue: an exact affine expression  cst + cmu*mu + cxi0*xi0 + cxi1*xi1
// in the formal parameters mu, xi0, xi1 with rational coefficients.  All
// eigenvalues (weights, central charge, L-values) live here.
// ---------------------------------------------------------------------------
struct WeightValue {
  Rational cst{0};
  Rational cmu{0};
  Rational cxi0{0};
  Rational cxi1{0};

  static WeightValue constant(const Rational& c) { return {c, 0, 0, 0}; }
  static WeightValue mu() { return {0, 1, 0, 0}; }
  static WeightValue xi0() { return {0, 0, 1, 0}; }
  static WeightValue xi1() { return {0, 0, 0, 1}; }

  bool is_constant() const { return cmu == 0 && cxi0 == 0 && cxi1 == 0; }
  bool is_zero() const { return is_constant() && cst == 0; }
  // A pure integer constant, exposed as long.  Empty when symbols survive or
  // the constant is non-integral.
  std::optional<long> integer_value() const;

  WeightValue& operator+=(const WeightValue& o);
  WeightValue& operator-=(const WeightValue& o);
  friend WeightValue operator+(WeightValue a, const WeightValue& b) { return a += b; }
  friend WeightValue operator-(WeightValue a, const WeightValue& b) { return a -= b; }
  friend WeightValue operator-(const WeightValue& a) {
    return {-a.cst, -a.cmu, -a.cxi0, -a.cxi1};
  }
  friend WeightValue operator*(const Rational& s, const WeightValue& a) {
    return {s * a.cst, s * a.cmu, s * a.cxi0, s * a.cxi1};
  }
  friend bool operator==(const WeightValue& a, const WeightValue& b) {
    return a.cst == b.cst && a.cmu == b.cmu && a.cxi0 == b.cxi0 && a.cxi1 == b.cxi1;
  }
  friend bool operator!=(const WeightValue& a, const WeightValue& b) { return !(a == b); }

  // Canonical rendering, e.g. "mu - xi0 + 3/2", "2*xi1", "0".
  std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Signature: the module label.  Offsets c_m >= ... >= c_n are stored against
// the base mu (entry M_i = mu + c_i, clamped outside [m, n]).  mu is either an
// exact rational or the formal symbol; xi0/xi1 are each auto (resolving to
// M_m / M_n), an exact rational, or a formal symbol.
// ---------------------------------------------------------------------------
enum class ParamKind { Auto, Value, Symbol };

struct Signature {
  int m = 0;
  int n = 0;
  std::vector<long> offsets;  // offsets[i - m] = c_i
  bool muSymbolic = false;
  Rational muValue{0};
  ParamKind xi0Kind = ParamKind::Auto;
  ParamKind xi1Kind = ParamKind::Auto;
  Rational xi0Value{0};
  Rational xi1Value{0};

  // c_i with index clamping (c_i = c_m for i <= m, c_n for i >= n).
  long offset_at(int i) const;

  WeightValue mu_wv() const;
  WeightValue xi0_wv() const;  // auto resolves to mu + c_m
  WeightValue xi1_wv() const;  // auto resolves to mu + c_n
  WeightValue central_charge() const { return xi0_wv() - xi1_wv(); }

  friend bool operator==(const Signature& a, const Signature& b);
  friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
};

// Parameter strings: mu is "sym" or a rational literal; xi0/xi1 are "auto",
// "sym", or a rational literal.  Throws std::invalid_argument on m > n,
// offsets of the wrong length, increasing offsets, or malformed parameters.
Signature make_signature(int m, int n, std::vector<long> offsets,
                         const std::string& mu = "0",
                         const std::string& xi0 = "auto",
                         const std::string& xi1 = "auto");

// JSON form: {"m": -1, "n": 0, "offsets": [1, 0],
//             "mu": "0" | "sym", "xi0": "auto" | "sym" | "3/2", "xi1": ...}
// mu/xi* keys are optional and default to "0" / "auto" / "auto".
Signature signature_from_json(const std::string& jsonText);
std::string signature_to_json(const Signature& sig);

// Stable FNV-1a 64-bit digest of the signature contents (used to stamp
// reports and matrix headers).
std::uint64_t signature_digest(const Signature& sig);

// The named signatures exercised throughout the test batteries.
struct NamedSignature {
  std::string name;
  Signature sig;
};
const std::vector<NamedSignature>& signature_battery();
// Lookup by battery name; empty when unknown.
std::optional<Signature> battery_signature(const std::string& name);

// ---------------------------------------------------------------------------
// CPattern: the stored rows of a pattern, bottom row first (rows[0] is row 1,
// holding exactly 1 entry; row r holds r entries).  Entries are integer
// offsets against mu.  Rows above the stored depth are implicitly the
// signature rows.  Value type; the signature is passed alongside wherever row
// materialization is needed.
// ---------------------------------------------------------------------------
struct CPattern {
  std::vector<std::vector<long>> rows;

  int depth() const { return static_cast<int>(rows.size()); }

  friend bool operator==(const CPattern& a, const CPattern& b) { return a.rows == b.rows; }
  friend bool operator!=(const CPattern& a, const CPattern& b) { return !(a == b); }
  // Plain structural order (suitable for map keys); use pattern_less for the
  // signature-aware enumeration order.
  friend bool operator<(const CPattern& a, const CPattern& b) { return a.rows < b.rows; }
};

// Row r holds entries for i in [row_left_index(r), row_right_index(r)].
int row_left_index(int r);
int row_right_index(int r);
// The signature's implicit row r.
std::vector<long> signature_row(const Signature& sig, int r);

// Lexicographic order "rows bottom-up, entries left-to-right" with implicit
// rows materialized from the signature; ties beyond both depths are equal.
bool pattern_less(const Signature& sig, const CPattern& a, const CPattern& b);

// The highest-weight pattern (every entry equals the signature value);
// normalizes to depth 1.
CPattern highest_weight(const Signature& sig);

// Structural + betweenness + normalization check.  Returns human-readable
// violations; empty means p is a valid normalized pattern for sig.
std::vector<std::string> validate(const Signature& sig, const CPattern& p);
bool is_valid(const Signature& sig, const CPattern& p);

// Shape + betweenness check only (validate without the normalization rule);
// useful for intermediate arrays that legitimately store trailing signature
// rows while entries are being edited.
std::vector<std::string> interlacing_violations(const Signature& sig, const CPattern& p);

// Drops trailing stored rows that coincide with the signature rows (keeps at
// least row 1).
CPattern normalize(const Signature& sig, CPattern p);

// Extends the stored rows with signature rows so that at least `depth` rows
// are stored (no-op when the pattern is already that deep).
CPattern materialize(const Signature& sig, CPattern p, int depth);

// Entry o_{i,r} with implicit rows resolved.  Throws std::out_of_range when
// (i, r) is outside the trapezoid shape.
long entry(const Signature& sig, const CPattern& p, int i, int r);
// L_{i,r} = mu + o_{i,r} - i as an exact WeightValue.
WeightValue l_value(const Signature& sig, const CPattern& p, int i, int r);

// Adds delta (+1/-1) to entry (j, r), materializing implicit rows as needed.
// Returns the re-normalized pattern when betweenness still holds, and nothing
// when the move leaves the pattern family (deletion convention).  Throws
// std::out_of_range when (j, r) is outside the shape.
std::optional<CPattern> shift(const Signature& sig, const CPattern& p, int j, int r,
                              int delta);

// All patterns whose rows >= N equal the signature rows, in ascending
// pattern_less order.  N = 1 yields exactly the highest-weight pattern.
std::vector<CPattern> enumerate_basis(const Signature& sig, int N);

// Minimal N (floored at 2) such that all rows >= N equal the signature rows.
int depth_requirement(const Signature& sig, const CPattern& p);

// Exact h_i eigenvalue on the pattern (row-sum difference plus the
// theta(-i)*(xi1 - xi0) - xi1 tail); c_eigenvalue is xi0 - xi1 for every
// pattern of the module.
WeightValue weight(const Signature& sig, const CPattern& p, int i);
WeightValue c_eigenvalue(const Signature& sig);

// ---------------------------------------------------------------------------
// Pattern text format: header "depth R sig <ref>", then R lines of
// space-separated integer offsets, top stored row first.
// ---------------------------------------------------------------------------
struct PatternText {
  CPattern pattern;
  std::string sigRef;
};
std::string pattern_to_text(const CPattern& p, const std::string& sigRef);
// Throws std::invalid_argument on malformed input.
PatternText pattern_from_text(const std::string& text);

// Compact one-line form "{{0},{1,0}}" (stored rows bottom-up, entries
// left-to-right), used in listings and check witnesses.  The parser accepts
// optional blanks between tokens and throws std::invalid_argument on
// malformed input or a wrong row shape.
std::string pattern_brief(const CPattern& p);
CPattern pattern_from_brief(const std::string& text);

}  // namespace qcpat
