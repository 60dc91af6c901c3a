#pragma once

#include "qcpat/parallel.hpp"
#include "qcpat/patterns.hpp"
#include "qcpat/radical.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcpat {

// ---------------------------------------------------------------------------
// LinComb: a finite linear combination of patterns with exact radical-scalar
// coefficients.  Zero coefficients are never stored.
// ---------------------------------------------------------------------------
struct LinComb {
  std::map<CPattern, RadicalScalar> terms;

  static LinComb zero() { return {}; }
  static LinComb unit(const CPattern& p);

  bool is_zero() const { return terms.empty(); }
  // Accumulates c into the coefficient of p, pruning exact zeros.
  void add(const CPattern& p, const RadicalScalar& c);

  LinComb& operator+=(const LinComb& o);
  LinComb& operator-=(const LinComb& o);
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  LinComb scaled(const RadicalScalar& c) const;
  LinComb scaled(const Frac& c) const;

  bool equals(const LinComb& o) const;
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.equals(b); }
  friend bool operator!=(const LinComb& a, const LinComb& b) { return !a.equals(b); }
};

// ---------------------------------------------------------------------------
// Rank-one orientation.  Resolved is the direction convention consistent with
// the defining relations (e_{-1} lowers entry (0,1), f_{-1} raises it); the
// flipped convention swaps the two target directions and is kept only as a
// negative control.  The build flag QCPAT_FLIP_RANK1_ORIENTATION selects the
// flipped convention as the default for the whole build.
// ---------------------------------------------------------------------------
enum class Orientation { Resolved, Flipped };

constexpr Orientation default_orientation() {
#ifdef QCPAT_FLIP_RANK1_ORIENTATION
  return Orientation::Flipped;
#else
  return Orientation::Resolved;
#endif
}

// One emitted matrix element: the bracket arguments that built the
// coefficient, the coefficient itself, and the source/target patterns.
struct TermTrace {
  CPattern source;
  CPattern target;
  BracketTrace brackets;
  RadicalScalar coeff;
};

// A term removed by the deletion convention although its coefficient is
// provably nonzero (every numerator and denominator bracket argument is
// nonzero, but the shifted array violates betweenness).
struct DeletionNote {
  CPattern source;
  std::string generator;  // e.g. "e0", "f-2"
  int j = 0;              // shifted index in the first row
  int l = 0;              // shifted index in the second row
  std::string reason;
};

struct ApplyOptions {
  Orientation orientation = default_orientation();
  std::vector<TermTrace>* traceSink = nullptr;
  std::vector<DeletionNote>* deletionSink = nullptr;
};

// ---------------------------------------------------------------------------
// Generator actions.  apply_e / apply_f realize the raising and lowering
// actions on the pattern basis for every integer index (rank-one index -1
// included); the Cartan action is the exact weight, available from patterns
// as weight() / c_eigenvalue().
//
// Deletion semantics, uniform across families:
//   - a zero numerator bracket argument kills the term silently;
//   - a betweenness-violating target with all bracket arguments nonzero is
//     dropped and reported through ApplyOptions::deletionSink;
//   - a zero denominator bracket argument on a term whose target is valid is
//     a convention bug and throws std::domain_error.
// ---------------------------------------------------------------------------
LinComb apply_e(const Signature& sig, int k, const CPattern& p,
                const ApplyOptions& opts = {});
LinComb apply_f(const Signature& sig, int k, const CPattern& p,
                const ApplyOptions& opts = {});

// Stabilized-regime closed form for the lowering action: valid when
// 2k >= depth_requirement(sig, p); single term (or zero), with coefficient
// the square root of minus the bracket of the adjacent signature gap.
// Throws std::invalid_argument when the precondition fails.
LinComb apply_f_closedform(const Signature& sig, int k, const CPattern& p);

// ---------------------------------------------------------------------------
// Operator words: formal sums of scaled generator products, applied
// rightmost-symbol-first.  Diag scales a pattern by v^(sum coef*weight(p,i));
// the exponent must come out a pure integer.  H and C multiply by the exact
// weight, which must be constant (no surviving formal parameters).
// ---------------------------------------------------------------------------
struct GenSymbol {
  enum class Kind { E, F, H, C, Diag };
  Kind kind = Kind::C;
  int index = 0;
  // Diag only: (weight index, integer coefficient) pairs.
  std::vector<std::pair<int, long>> diag;

  static GenSymbol e(int k) { return {Kind::E, k, {}}; }
  static GenSymbol f(int k) { return {Kind::F, k, {}}; }
  static GenSymbol h(int k) { return {Kind::H, k, {}}; }
  static GenSymbol c() { return {Kind::C, 0, {}}; }
  static GenSymbol diag_v(std::vector<std::pair<int, long>> exps) {
    return {Kind::Diag, 0, std::move(exps)};
  }
};

// "e3", "f-2", "h0", "c" (Diag has no name and gen_name throws on it).
std::string gen_name(const GenSymbol& g);
// Inverse of gen_name; throws std::invalid_argument on malformed names.
GenSymbol gen_parse(const std::string& name);

struct WordTerm {
  RadicalScalar coeff = RadicalScalar::one();
  std::vector<GenSymbol> symbols;  // applied right to left
};
using OperatorWord = std::vector<WordTerm>;

OperatorWord word_identity();
OperatorWord word_of(std::vector<GenSymbol> symbols);
OperatorWord word_scaled(const OperatorWord& w, const RadicalScalar& c);
OperatorWord word_mul(const OperatorWord& a, const OperatorWord& b);
OperatorWord word_add(const OperatorWord& a, const OperatorWord& b);
OperatorWord word_sub(const OperatorWord& a, const OperatorWord& b);
// xy - q*yx with q = v^2.
OperatorWord q_commutator(const OperatorWord& x, const OperatorWord& y);
// xy - yx.
OperatorWord commutator(const OperatorWord& x, const OperatorWord& y);

LinComb apply_symbol(const Signature& sig, const GenSymbol& g, const LinComb& x,
                     const ApplyOptions& opts = {});
LinComb apply_word(const Signature& sig, const OperatorWord& w, const LinComb& x,
                   const ApplyOptions& opts = {});

// The normalized generators used by the composite-generator construction:
// hat e_i = [e_i diag] with diagonal v^(h_{i+1} - h_i), hat f_i the mirror.
// kind is 'e' or 'f'.
OperatorWord hat_generator(char kind, int i);

// Composite generator word W(a, b): for a < b the nested right q-commutator
// of hat e_a .. hat e_{b-1}; for a > b the mirror in hat f's; for a == b the
// single symbol h_a.
OperatorWord weyl_generator(int a, int b);

// ---------------------------------------------------------------------------
// The gl-side Cartan eigenvalue: H_i = h_i + xi0 for i <= 0 and h_i + xi1 for
// i >= 1 (the raising/lowering generators coincide with e/f).
// ---------------------------------------------------------------------------
WeightValue gl_H(const Signature& sig, const CPattern& p, int i);

// ---------------------------------------------------------------------------
// Locality & series diagnostics.
// ---------------------------------------------------------------------------

// Smallest r such that every generator with |index| >= r annihilates V_N:
// max(ceil((N+3)/2), 1-m, n).  Requires N >= 1.
int locality_radius(const Signature& sig, int N);

// Partial sum of the weight series: sum of weight(p, i) over |i| <= T,
// with a stabilization verdict (all further terms provably zero).
struct SeriesPartial {
  WeightValue value;
  bool stabilized = false;
};
SeriesPartial series_I_partial(const Signature& sig, const CPattern& p, int T);

// Support bookkeeping for monomials in the generators: alpha counts e/f
// indices, gamma counts h indices (multiplicity maps).
struct SeriesSupport {
  std::map<int, int> alpha;
  std::map<int, int> gamma;
};
// Maximal integer intervals [lo, hi] covering all indices with positive
// multiplicity, in ascending order.
std::vector<std::pair<int, int>> support_components(const SeriesSupport& s);

// ---------------------------------------------------------------------------
// Sparse matrix export.  Columns are indexed by enumerate_basis(sig, N),
// rows by enumerate_basis(sig, Np) with Np = window_growth(N, g): the growth
// bound max(N, 2|k|+3) for e/f and N itself for h/c/diag.
// ---------------------------------------------------------------------------
int window_growth(int N, const GenSymbol& g);

struct GenMatrix {
  std::string gen;          // gen_name of the generator
  std::uint64_t sigDigest = 0;
  int N = 0;                // source window depth
  int Np = 0;               // target window depth (growth bound)
  std::vector<CPattern> source;
  std::vector<CPattern> target;
  // (row, col) -> exact scalar, holding only structurally nonzero entries.
  std::map<std::pair<int, int>, RadicalScalar> entries;

  bool equals(const GenMatrix& o) const;
};

// Builds the matrix column by column (columns are independent tasks and run
// under the requested execution policy; any trace/deletion sinks force the
// serial path so note order stays deterministic).
GenMatrix build_matrix(const Signature& sig, const GenSymbol& g, int N,
                       Exec exec = Exec::Parallel, const ApplyOptions& opts = {});

// Pinned text form:
//   matrix <gen> sig=<16 hex digits> N=<N> dim=<d>
//   <row> <col> <scalar>
// with d the source dimension, indices 0-based, lines sorted by (col, row),
// and scalars in the exact scalar grammar.
std::string matrix_to_text(const GenMatrix& M);
// Numeric rendering at v = v0: header gains " v=<v0>", entry lines are
// "<row> <col> <re> <im>" (17 significant digits).
std::string matrix_to_text_numeric(const GenMatrix& M, double v0);
// Re-parses the exact text form; the signature supplies the basis and must
// match the embedded digest.  Throws std::invalid_argument on malformed or
// mismatched input.
GenMatrix matrix_from_text(const Signature& sig, const std::string& text);

}  // namespace qcpat
